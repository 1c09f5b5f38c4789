#include "cyclap/cli.hpp"

#include "CLI11.hpp"

#include <cmath>
#include <fstream>
#include <ostream>

namespace cyclap::cli {

namespace {

// Diagnostics (errors, residuals, deviations) carry a few digits; results
// carry the full decimal width of the working precision.
constexpr int kDiagDigits = 6;
constexpr int kTableDigits = 12;

using nlohmann::json;

std::string csv_cell(const json& v) {
  if (v.is_null()) return "";
  if (!v.is_string()) return v.dump();
  const std::string& s = v.get_ref<const std::string&>();
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q.push_back('"');
    q.push_back(c);
  }
  q.push_back('"');
  return q;
}

json real_cell(const Real& x, int digits) { return x.to_string(digits); }

Real parse_tol(const RunConfig& cfg, const PrecisionContext& ctx) {
  if (!cfg.tol) return ctx.default_tol();
  const Real t = ctx.parse(*cfg.tol);
  if (!(t > 0.0)) throw DomainError("tolerance must be positive");
  return t;
}

AlphaParam real_alpha(const RunConfig& cfg, const PrecisionContext& ctx) {
  AlphaParam a = AlphaParam::parse(cfg.alpha, ctx);
  if (!a.is_real()) throw DomainError("complex alpha is only accepted by eigvec");
  return a;
}

json base_config(const RunConfig& cfg) {
  json c = json::object();
  c["command"] = cfg.command;
  c["precision_bits"] = cfg.precision_bits;
  c["format"] = cfg.format == OutputFormat::csv ? "csv" : "json";
  return c;
}

// One row of the spectrum table.
struct SpectrumRow {
  int j;
  Real theta;
  Real lambda;
  std::string method;
  int iterations = 0;
  std::optional<Real> certified_error;
  std::optional<Real> residual;
};

SpectrumRow single_row(const ProblemInstance& inst, int j, SpectrumMethod method,
                       const PrecisionContext& ctx, const Real& tol) {
  const int n = inst.n();
  if (j < 1 || j > n) throw DomainError("j must lie in [1, n]");
  const AlphaParam& a = inst.alpha();
  if (j % 2 == 1) {
    Real t = d_nj(n, j, ctx);
    Real l = g(t);
    return {j, std::move(t), std::move(l), provenance_name(Provenance::closed_form), 0, {}, {}};
  }
  if (method == SpectrumMethod::asymptotic) {
    Real l = lambda_second_order(a, n, j, ctx).value;
    Real t = ldexp(asin(ldexp(sqrt(l), -1)), 1);
    Real h = abs(h_main(a, n, j, t, ctx));
    return {j, std::move(t), std::move(l), provenance_name(Provenance::asymptotic), 0, {},
            std::move(h)};
  }
  SolveReport r;
  Provenance p = Provenance::newton;
  switch (method) {
    case SpectrumMethod::newton:
      r = solve_theta_newton(a, n, j, ctx, tol);
      break;
    case SpectrumMethod::bisection:
      r = solve_theta_bisection(a, n, j, ctx, tol);
      p = Provenance::bisection;
      break;
    default:
      r = solve_theta_fixed_point(a, n, j, ctx, tol);
      p = Provenance::fixed_point;
      break;
  }
  Real l = g(r.root);
  return {j,
          std::move(r.root),
          std::move(l),
          provenance_name(p),
          r.iterations,
          std::move(r.certified_error),
          std::move(r.residual)};
}

std::vector<SpectrumRow> spectrum_rows(const ProblemInstance& inst, std::optional<int> j,
                                       SpectrumMethod method, const PrecisionContext& ctx,
                                       const Real& tol) {
  std::vector<SpectrumRow> rows;
  if (j) {
    rows.push_back(single_row(inst, *j, method, ctx, tol));
    return rows;
  }
  const SpectrumResult s = full_spectrum(inst, method, ctx, tol);
  for (int k = 1; k <= inst.n(); ++k) {
    const auto i = static_cast<std::size_t>(k - 1);
    SpectrumRow row{k, s.thetas[i], s.lambdas[i], provenance_name(s.methods[i]), 0, {}, {}};
    if (s.reports[i]) {
      row.iterations = s.reports[i]->iterations;
      row.certified_error = s.reports[i]->certified_error;
      row.residual = s.reports[i]->residual;
    } else if (s.methods[i] == Provenance::asymptotic) {
      row.residual = abs(h_main(inst.alpha(), inst.n(), k, s.thetas[i], ctx));
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

RowSet cmd_spectrum(const RunConfig& cfg) {
  const PrecisionContext ctx(cfg.precision_bits);
  const ProblemInstance inst(real_alpha(cfg, ctx), cfg.n);
  const SpectrumMethod method = parse_spectrum_method(cfg.method);
  const Real tol = parse_tol(cfg, ctx);
  RowSet rs;
  rs.config = base_config(cfg);
  rs.config["alpha"] = cfg.alpha;
  rs.config["n"] = cfg.n;
  rs.config["method"] = spectrum_method_name(method);
  rs.config["tol"] = tol.to_string(kDiagDigits);
  if (cfg.j) rs.config["j"] = *cfg.j;
  rs.columns = {"j", "theta", "lambda", "method", "iterations", "certified_error", "residual"};
  const int digits = ctx.decimal_digits();
  for (SpectrumRow& r : spectrum_rows(inst, cfg.j, method, ctx, tol)) {
    rs.rows.push_back({r.j, real_cell(r.theta, digits), real_cell(r.lambda, digits), r.method,
                       r.iterations,
                       r.certified_error ? real_cell(*r.certified_error, kDiagDigits) : json(),
                       r.residual ? real_cell(*r.residual, kDiagDigits) : json()});
  }
  return rs;
}

RowSet cmd_eigvec(const RunConfig& cfg) {
  const PrecisionContext ctx(cfg.precision_bits);
  const ProblemInstance inst(AlphaParam::parse(cfg.alpha, ctx), cfg.n);
  const SpectrumMethod method = parse_spectrum_method(cfg.method);
  const Real tol = parse_tol(cfg, ctx);
  RowSet rs;
  rs.config = base_config(cfg);
  rs.config["alpha"] = cfg.alpha;
  rs.config["n"] = cfg.n;
  rs.config["method"] = spectrum_method_name(method);
  if (cfg.j) rs.config["j"] = *cfg.j;
  // Per-vector quantities are filled on the k = 1 row only.
  rs.columns = {"j", "k", "re", "im", "lambda", "exact_norm", "asympt_norm"};
  const int digits = ctx.decimal_digits();
  for (const SpectrumRow& r : spectrum_rows(inst, cfg.j, method, ctx, tol)) {
    const Eigenvector v = eigenvector(inst, r.j, r.theta, ctx);
    for (int k = 1; k <= inst.n(); ++k) {
      const Complex& c = v.coords[static_cast<std::size_t>(k - 1)];
      std::vector<json> row{r.j, k, real_cell(c.re, digits), real_cell(c.im, digits)};
      if (k == 1) {
        row.push_back(real_cell(r.lambda, digits));
        row.push_back(real_cell(v.exact_norm, digits));
        row.push_back(real_cell(v.asympt_norm, digits));
      } else {
        row.insert(row.end(), 3, json());
      }
      rs.rows.push_back(std::move(row));
    }
  }
  return rs;
}

RowSet cmd_table(const RunConfig& cfg, bool alpha_given, bool n_given,
                 std::vector<std::string>& mismatches) {
  const TableId id = parse_table(cfg.table);
  const PrecisionContext ctx(cfg.precision_bits);
  std::vector<std::string> alphas = table_alphas(id);
  if (alpha_given) {
    (void)real_alpha(cfg, ctx);
    alphas = {cfg.alpha};
  }
  std::vector<int> sizes = table_sizes();
  if (n_given) sizes = {cfg.n};
  if (cfg.max_n) std::erase_if(sizes, [&](int n) { return n > *cfg.max_n; });
  if (sizes.empty()) throw DomainError("no table rows left after --max-n");
  if (cfg.j && id != TableId::smallj_T3) throw DomainError("--j applies to smallj_T3 only");
  if (cfg.j && (*cfg.j < 2 || *cfg.j > 6 || *cfg.j % 2 != 0)) {
    throw DomainError("smallj_T3 has columns j = 2, 4, 6");
  }

  RowSet rs;
  rs.config = base_config(cfg);
  rs.config["table"] = table_name(id);
  rs.config["alphas"] = alphas;
  rs.config["sizes"] = sizes;
  rs.config["compare"] = cfg.compare;
  rs.config["tolerance"] = table_tolerance(id);
  rs.columns = {"table", "alpha", "n", "j", "max_error", "scaled"};
  if (cfg.compare) {
    for (const char* c : {"published_error", "published_scaled", "rel_deviation", "within_tolerance"}) {
      rs.columns.push_back(c);
    }
  }
  for (const TableCell& c : compute_table(id, alphas, sizes, ctx)) {
    if (cfg.j && c.j != *cfg.j) continue;
    std::vector<json> row{table_name(id), c.alpha, c.n, c.j == 0 ? json() : json(c.j),
                          real_cell(c.max_error, kTableDigits), real_cell(c.scaled, kTableDigits)};
    if (cfg.compare) {
      row.push_back(c.published_error ? json(*c.published_error) : json());
      if (c.published_scaled) {
        const double dev = c.scaled.to_double() / *c.published_scaled - 1.0;
        const bool ok = std::fabs(dev) <= table_tolerance(id);
        row.push_back(*c.published_scaled);
        row.push_back(dev);
        row.push_back(ok);
        if (!ok) {
          mismatches.push_back("alpha=" + c.alpha + " n=" + std::to_string(c.n) +
                               (c.j ? " j=" + std::to_string(c.j) : std::string()));
        }
      } else {
        row.insert(row.end(), 3, json());
      }
    }
    rs.rows.push_back(std::move(row));
  }
  return rs;
}

RowSet cmd_verify(const RunConfig& cfg, bool precision_given, std::vector<CheckResult>& checks) {
  VerifyConfig vc;
  if (precision_given) vc.precision_bits = cfg.precision_bits;
  vc.seed = cfg.seed;
  if (cfg.max_n) vc.max_n = *cfg.max_n;
  vc.inject_fault = cfg.inject_fault;
  checks = run_verify(vc);
  RowSet rs;
  rs.config = base_config(cfg);
  rs.config["precision_bits"] = vc.precision_bits;
  rs.config["seed"] = vc.seed;
  rs.config["max_n"] = vc.max_n;
  rs.config["alphas"] = "p/q, q <= 10";
  rs.columns = {"check", "cases", "max_error", "threshold", "status"};
  for (const CheckResult& c : checks) {
    rs.rows.push_back({c.name, c.cases, c.max_error, c.threshold, c.passed ? "pass" : "fail"});
  }
  return rs;
}

RowSet cmd_plotdata(const RunConfig& cfg) {
  const Figure fig = parse_figure(cfg.figure);
  const PrecisionContext ctx(cfg.precision_bits);
  RowSet rs = plot_data(fig, real_alpha(cfg, ctx), cfg.n, cfg.j, ctx);
  rs.config = base_config(cfg);
  rs.config["figure"] = cfg.figure;
  rs.config["alpha"] = cfg.alpha;
  rs.config["n"] = cfg.n;
  if (cfg.j) rs.config["j"] = *cfg.j;
  return rs;
}

void emit(const RowSet& rs, const RunConfig& cfg, std::ostream& out) {
  std::ofstream file;
  std::ostream* os = &out;
  if (!cfg.out.empty()) {
    file.open(cfg.out, std::ios::binary | std::ios::trunc);
    if (!file) throw DomainError("cannot open output file " + cfg.out);
    os = &file;
  }
  if (cfg.format == OutputFormat::csv) {
    write_csv(rs, *os);
  } else {
    write_json(rs, *os);
  }
  os->flush();
  if (!*os) throw DomainError("failed writing output");
}

void add_common(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("--alpha", cfg.alpha, "edge weight: p/q, decimal, or a+bi (eigvec only)");
  sub->add_option("--n", cfg.n, "cycle length")->check(CLI::Range(3, 1 << 24));
  sub->add_option("--j", cfg.j, "eigenvalue index (1-based, ascending)");
  sub->add_option("--method", cfg.method, "root finder for even j")
      ->check(CLI::IsMember({"newton", "bisect", "fixed-point", "asymptotic"}));
  sub->add_option("--precision-bits", cfg.precision_bits, "mantissa bits")
      ->check(CLI::Range(53, 1 << 20));
  sub->add_option("--tol", cfg.tol, "solver tolerance (decimal)");
  sub->add_option("--format", cfg.format, "csv or json")
      ->transform(CLI::CheckedTransformer(
          std::map<std::string, OutputFormat>{{"csv", OutputFormat::csv},
                                              {"json", OutputFormat::json}}));
  sub->add_option("--out", cfg.out, "output file (default: stdout)");
  sub->add_flag("--compare", cfg.compare, "diff table cells against the published values");
  sub->add_option("--seed", cfg.seed, "seed of the verification sweep");
  sub->add_option("--max-n", cfg.max_n, "largest n of table rows or of the verify sweep");
  // Mutation switch for testing the verifier itself; hidden from help.
  sub->add_option("--inject-fault", cfg.inject_fault)->group("");
}

}  // namespace

void write_csv(const RowSet& rs, std::ostream& os) {
  for (std::size_t c = 0; c < rs.columns.size(); ++c) {
    if (c) os << ',';
    os << csv_cell(rs.columns[c]);
  }
  os << '\n';
  for (const auto& row : rs.rows) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c) os << ',';
      os << csv_cell(row[c]);
    }
    os << '\n';
  }
}

void write_json(const RowSet& rs, std::ostream& os) {
  // Ordered so that row keys keep the column order.
  nlohmann::ordered_json doc = nlohmann::ordered_json::object();
  doc["config"] = nlohmann::ordered_json::parse(rs.config.dump());
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (const auto& row : rs.rows) {
    nlohmann::ordered_json obj = nlohmann::ordered_json::object();
    for (std::size_t c = 0; c < row.size() && c < rs.columns.size(); ++c) {
      obj[rs.columns[c]] = row[c];
    }
    rows.push_back(std::move(obj));
  }
  doc["rows"] = std::move(rows);
  os << doc.dump(2) << '\n';
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"Eigenvalues and eigenvectors of the weighted cycle Laplacian"};
  app.require_subcommand(1);
  CLI::App* spectrum = app.add_subcommand("spectrum", "all eigenvalues with solver diagnostics");
  CLI::App* eigvec = app.add_subcommand("eigvec", "eigenvector coordinates and norms");
  CLI::App* table = app.add_subcommand("table", "reproduce an error table");
  CLI::App* verify = app.add_subcommand("verify", "run the invariant suite over a sweep");
  CLI::App* plot = app.add_subcommand("plotdata", "sampled curves for a figure");
  for (CLI::App* sub : {spectrum, eigvec, table, verify, plot}) add_common(sub, cfg);
  table->add_option("name", cfg.table, "asympt_T1 | newton2_T2 | smallj_T3")->required();
  plot->add_option("figure", cfg.figure, "main_eq | eta_lines | theta_lambda | alpha_sweep")
      ->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    app.exit(e, out, err);
    return static_cast<int>(Exit::ok);
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return static_cast<int>(Exit::bad_config);
  }

  CLI::App* sub = app.get_subcommands().front();
  cfg.command = sub->get_name();
  try {
    RowSet rs;
    std::vector<CheckResult> checks;
    std::vector<std::string> mismatches;
    if (sub == spectrum) {
      rs = cmd_spectrum(cfg);
    } else if (sub == eigvec) {
      rs = cmd_eigvec(cfg);
    } else if (sub == table) {
      rs = cmd_table(cfg, sub->count("--alpha") > 0, sub->count("--n") > 0, mismatches);
    } else if (sub == verify) {
      rs = cmd_verify(cfg, sub->count("--precision-bits") > 0, checks);
    } else {
      rs = cmd_plotdata(cfg);
    }
    emit(rs, cfg, out);
    bool failed = false;
    for (const CheckResult& c : checks) {
      if (c.passed) continue;
      err << "verify: check " << c.name << " failed, max error " << c.max_error
          << " > threshold " << c.threshold << '\n';
      failed = true;
    }
    if (failed) return static_cast<int>(Exit::verify_failure);
    for (const std::string& m : mismatches) {
      err << "table: cell outside tolerance: " << m << '\n';
    }
    if (!mismatches.empty()) {
      return static_cast<int>(Exit::table_mismatch);
    }
    return static_cast<int>(Exit::ok);
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return static_cast<int>(Exit::bad_config);
  } catch (const Error& e) {
    err << "solver refused: " << e.what() << '\n';
    return static_cast<int>(Exit::solver_refusal);
  }
}

}  // namespace cyclap::cli
