#include "support.hpp"

#include "cyclap/cli.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

using namespace cyclap;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "cyclap");
  std::vector<const char*> argv;
  for (const std::string& a : args) argv.push_back(a.c_str());
  std::ostringstream out;
  std::ostringstream err;
  const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream is(text);
  std::string line;
  while (std::getline(is, line)) {
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream ls(line);
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    if (!line.empty() && line.back() == ',') cells.emplace_back();
    rows.push_back(cells);
  }
  return rows;
}

std::size_t column(const std::vector<std::string>& header, const std::string& name) {
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (header[i] == name) return i;
  }
  FAIL("missing column " << name);
  return 0;
}

Real angle(const PrecisionContext& ctx, long num, long den) {
  Real x = ctx.pi();
  x.mul_long(num);
  x.div_long(den);
  return x;
}

}  // namespace

TEST_CASE("cli spectrum at alpha 1/2") {
  const Run r = run_cli({"spectrum", "--alpha", "1/2", "--n", "4", "--method", "newton",
                         "--precision-bits", "200"});
  REQUIRE(r.code == 0);
  CHECK(r.out.find('\r') == std::string::npos);
  const auto rows = parse_csv(r.out);
  REQUIRE(rows.size() == 5);
  CHECK(rows[0] == std::vector<std::string>{"j", "theta", "lambda", "method", "iterations",
                                            "certified_error", "residual"});
  PrecisionContext ctx(200);
  const std::size_t lc = column(rows[0], "lambda");
  const Real expected[4] = {ctx.real(0.0), g(angle(ctx, 2, 5)), ctx.real(2.0), g(angle(ctx, 4, 5))};
  for (int j = 1; j <= 4; ++j) {
    CHECK(rows[static_cast<std::size_t>(j)][0] == std::to_string(j));
    const Real l = ctx.parse(rows[static_cast<std::size_t>(j)][lc]);
    CHECK(abs(l - expected[j - 1]) <= ctx.eps() * 64.0);
  }
}

TEST_CASE("cli exit codes") {
  CHECK(run_cli({"spectrum", "--alpha", "0", "--n", "4"}).code == 2);
  CHECK(run_cli({"spectrum", "--alpha", "1", "--n", "4"}).code == 2);
  CHECK(run_cli({"spectrum", "--alpha", "abc", "--n", "4"}).code == 2);
  CHECK(run_cli({"spectrum", "--alpha", "1/3", "--n", "2"}).code == 2);
  CHECK(run_cli({"spectrum", "--n", "5", "--precision-bits", "20"}).code == 2);
  CHECK(run_cli({"spectrum", "--n", "5", "--method", "secant"}).code == 2);
  CHECK(run_cli({"spectrum", "--n", "5", "--format", "xml"}).code == 2);
  CHECK(run_cli({"spectrum", "--n", "5", "--tol", "-1"}).code == 2);
  CHECK(run_cli({}).code == 2);
  CHECK(run_cli({"frobnicate"}).code == 2);
  CHECK(run_cli({"spectrum", "--alpha", "1/3", "--n", "10", "--method", "fixed-point",
                 "--precision-bits", "128"})
            .code == 0);
  const Run refused = run_cli({"spectrum", "--alpha", "0.9", "--n", "5", "--method",
                               "fixed-point", "--precision-bits", "128"});
  CHECK(refused.code == 3);
  CHECK(refused.err.find("K1") != std::string::npos);
  CHECK(run_cli({"spectrum", "--alpha", "0.3+0.2i", "--n", "5"}).code == 2);
  CHECK(run_cli({"spectrum", "--help"}).code == 0);
}

TEST_CASE("cli methods agree and single rows match the full spectrum") {
  std::vector<std::vector<std::vector<std::string>>> all;
  for (const char* m : {"newton", "bisect", "fixed-point"}) {
    const Run r = run_cli({"spectrum", "--alpha", "2/7", "--n", "12", "--method", m,
                           "--precision-bits", "256"});
    REQUIRE(r.code == 0);
    all.push_back(parse_csv(r.out));
  }
  PrecisionContext ctx(256);
  for (std::size_t row = 1; row < all[0].size(); ++row) {
    const Real ref = ctx.parse(all[0][row][2]);
    for (std::size_t m = 1; m < all.size(); ++m) {
      CHECK(abs(ctx.parse(all[m][row][2]) - ref) <= ctx.default_tol() * 10.0);
    }
  }
  const Run one = run_cli({"spectrum", "--alpha", "2/7", "--n", "12", "--j", "6",
                           "--precision-bits", "256"});
  REQUIRE(one.code == 0);
  const auto rows = parse_csv(one.out);
  REQUIRE(rows.size() == 2);
  CHECK(rows[1] == all[0][6]);

  const Run asym = run_cli({"spectrum", "--alpha", "2/7", "--n", "12", "--method",
                            "asymptotic", "--precision-bits", "128"});
  REQUIRE(asym.code == 0);
  const auto ar = parse_csv(asym.out);
  CHECK(ar[2][3] == "asymptotic");
  CHECK(ar[3][3] == "closed_form");
  CHECK(run_cli({"spectrum", "--n", "12", "--j", "13"}).code == 2);
}

TEST_CASE("cli json output round-trips") {
  const Run r = run_cli({"spectrum", "--alpha", "1/3", "--n", "7", "--format", "json",
                         "--precision-bits", "300"});
  REQUIRE(r.code == 0);
  const nlohmann::json doc = nlohmann::json::parse(r.out);
  REQUIRE(doc.contains("config"));
  REQUIRE(doc.contains("rows"));
  CHECK(doc.size() == 2);
  CHECK(doc["config"]["n"] == 7);
  CHECK(doc["config"]["alpha"] == "1/3");
  REQUIRE(doc["rows"].size() == 7);

  PrecisionContext ctx(300);
  const SpectrumResult s = full_spectrum(ProblemInstance(AlphaParam::parse("1/3", ctx), 7),
                                         SpectrumMethod::newton, ctx, ctx.default_tol());
  const int digits = ctx.decimal_digits();
  for (std::size_t i = 0; i < 7; ++i) {
    const nlohmann::json& row = doc["rows"][i];
    CHECK(row["j"] == static_cast<int>(i) + 1);
    const std::string text = row["lambda"].get<std::string>();
    // Re-parsing and re-printing reproduces every emitted digit.
    CHECK(ctx.parse(text).to_string(digits) == text);
    CHECK(text == s.lambdas[i].to_string(digits));
  }
}

TEST_CASE("cli writes to --out") {
  const std::string path = "cli_out_test.csv";
  std::remove(path.c_str());
  const Run r = run_cli({"spectrum", "--n", "5", "--precision-bits", "64", "--out", path});
  REQUIRE(r.code == 0);
  CHECK(r.out.empty());
  std::ifstream in(path, std::ios::binary);
  const std::string body((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  CHECK(body.rfind("j,theta,lambda", 0) == 0);
  CHECK(body.back() == '\n');
  std::remove(path.c_str());
  CHECK(run_cli({"spectrum", "--n", "5", "--out", "/nonexistent/dir/x.csv"}).code == 2);
}

TEST_CASE("cli eigvec") {
  const Run r = run_cli({"eigvec", "--alpha", "0.5+0.3i", "--n", "6", "--j", "4",
                         "--precision-bits", "200"});
  REQUIRE(r.code == 0);
  const auto rows = parse_csv(r.out);
  REQUIRE(rows.size() == 7);
  CHECK(rows[0] ==
        std::vector<std::string>{"j", "k", "re", "im", "lambda", "exact_norm", "asympt_norm"});
  PrecisionContext ctx(200);
  const ProblemInstance inst(AlphaParam::parse("0.5+0.3i", ctx), 6);
  std::vector<Complex> v;
  for (std::size_t k = 1; k <= 6; ++k) {
    v.emplace_back(ctx.parse(rows[k][2]), ctx.parse(rows[k][3]));
    if (k > 1) CHECK(rows[k][4].empty());
  }
  const Real lambda = ctx.parse(rows[1][4]);
  CHECK(residual(inst, lambda, v, ctx) <= ctx.default_tol() * 100.0);
  CHECK(abs(euclidean_norm(v) - ctx.parse(rows[1][5])) <= ctx.default_tol() * 100.0);

  const Run all = run_cli({"eigvec", "--alpha", "1/3", "--n", "5", "--precision-bits", "64"});
  REQUIRE(all.code == 0);
  CHECK(parse_csv(all.out).size() == 1 + 25);
}

TEST_CASE("cli table cells") {
  {
    const Run r = run_cli({"table", "asympt_T1", "--alpha", "1/3", "--n", "256", "--compare"});
    REQUIRE(r.code == 0);
    const auto rows = parse_csv(r.out);
    REQUIRE(rows.size() == 2);
    const double v = std::stod(rows[1][column(rows[0], "scaled")]);
    CHECK(v >= 37.9);
    CHECK(v <= 38.6);
    CHECK(rows[1][column(rows[0], "published_scaled")] == "38.24");
    CHECK(rows[1][column(rows[0], "within_tolerance")] == "true");
  }
  {
    const Run r = run_cli({"table", "newton2_T2", "--alpha", "4/5", "--n", "256"});
    REQUIRE(r.code == 0);
    const auto rows = parse_csv(r.out);
    const double v = std::stod(rows[1][column(rows[0], "scaled")]);
    CHECK(v >= 44.9);
    CHECK(v <= 45.9);
    CHECK(rows[0].size() == 6);
  }
  {
    const Run r = run_cli({"table", "smallj_T3", "--n", "512", "--j", "4", "--compare"});
    REQUIRE(r.code == 0);
    const auto rows = parse_csv(r.out);
    REQUIRE(rows.size() == 2);
    CHECK(std::stod(rows[1][column(rows[0], "scaled")]) == doctest::Approx(0.44).epsilon(0.045));
  }
  {
    const Run r = run_cli({"table", "T3", "--max-n", "256", "--format", "json"});
    REQUIRE(r.code == 0);
    const nlohmann::json doc = nlohmann::json::parse(r.out);
    CHECK(doc["rows"].size() == 3);
    CHECK(doc["config"]["table"] == "smallj_T3");
  }
  // 53 bits cannot resolve errors of 1e-17: compare mode must flag the cell.
  const Run low = run_cli({"table", "newton2_T2", "--alpha", "1/3", "--n", "256",
                           "--precision-bits", "53", "--compare"});
  CHECK(low.code == 4);
  CHECK(low.err.find("n=256") != std::string::npos);
  CHECK(run_cli({"table", "T9"}).code == 2);
  CHECK(run_cli({"table", "T1", "--max-n", "100"}).code == 2);
  CHECK(run_cli({"table", "T1", "--j", "2", "--max-n", "256"}).code == 2);
}

TEST_CASE("cli verify") {
  const std::vector<std::string> args = {"verify", "--max-n", "7", "--precision-bits", "128",
                                         "--seed", "42"};
  const Run a = run_cli(args);
  const Run b = run_cli(args);
  REQUIRE(a.code == 0);
  CHECK(a.out == b.out);
  const auto rows = parse_csv(a.out);
  CHECK(rows[0] == std::vector<std::string>{"check", "cases", "max_error", "threshold", "status"});
  CHECK(rows.size() == 17);
  for (std::size_t i = 1; i < rows.size(); ++i) CHECK(rows[i][4] == "pass");

  std::vector<std::string> other = args;
  other.back() = "43";
  CHECK(run_cli(other).out != a.out);

  std::vector<std::string> faulty = args;
  faulty.push_back("--inject-fault");
  faulty.push_back("eta_sign");
  const Run f = run_cli(faulty);
  CHECK(f.code == 1);
  CHECK(f.err.find("eta_equivalence") != std::string::npos);
  CHECK(f.out.find("eta_equivalence,") != std::string::npos);
  CHECK(f.out.find(",fail") != std::string::npos);

  std::vector<std::string> bad = args;
  bad.push_back("--inject-fault");
  bad.push_back("nothing");
  CHECK(run_cli(bad).code == 2);
  CHECK(cli::verify_log10_threshold(350) == -90.0);
}

TEST_CASE("rational alphas") {
  const std::vector<std::string> a = cli::rational_alphas(10);
  CHECK(a.size() == 31);
  CHECK(a.front() == "1/10");
  CHECK(a.back() == "9/10");
  CHECK(std::find(a.begin(), a.end(), "1/2") != a.end());
  CHECK(std::find(a.begin(), a.end(), "2/4") == a.end());
}

TEST_CASE("cli plotdata") {
  CHECK(run_cli({"plotdata", "bogus"}).code == 2);
  PrecisionContext ctx(64);
  {
    const Run r = run_cli({"plotdata", "main_eq", "--alpha", "1/3", "--n", "5",
                           "--precision-bits", "64"});
    REQUIRE(r.code == 0);
    int roots = 0;
    for (const auto& row : parse_csv(r.out)) {
      if (row[0] != "root") continue;
      const int j = std::stoi(row[1]);
      const Real x = ctx.parse(row[2]);
      CHECK(x > angle(ctx, j - 1, 5));
      CHECK(x < angle(ctx, j, 5));
      ++roots;
    }
    CHECK(roots == 2);
  }
  {
    const Run r = run_cli({"plotdata", "theta_lambda", "--alpha", "4/5", "--n", "6",
                           "--precision-bits", "64"});
    REQUIRE(r.code == 0);
    int marks = 0;
    for (const auto& row : parse_csv(r.out)) {
      if (row[0] != "mesh") continue;
      const int k = std::stoi(row[1]);
      // Plot data carries 17 significant digits.
      CHECK(abs(ctx.parse(row[2]) - angle(ctx, k, 6)) <= 1e-16 * 4.0);
      ++marks;
    }
    CHECK(marks == 7);
  }
  {
    const Run r = run_cli({"plotdata", "alpha_sweep", "--n", "10", "--j", "4",
                           "--precision-bits", "64"});
    REQUIRE(r.code == 0);
    const auto rows = parse_csv(r.out);
    REQUIRE(rows.size() > 100);
    for (std::size_t i = 2; i < rows.size(); ++i) {
      CHECK(ctx.parse(rows[i][3]) > ctx.parse(rows[i - 1][3]));
      CHECK(ctx.parse(rows[i][2]) > ctx.parse(rows[i - 1][2]));
    }
    CHECK(run_cli({"plotdata", "alpha_sweep", "--n", "10"}).code == 2);
  }
  {
    const Run r = run_cli({"plotdata", "eta_lines", "--alpha", "1/3", "--n", "5",
                           "--precision-bits", "64", "--format", "json"});
    REQUIRE(r.code == 0);
    const nlohmann::json doc = nlohmann::json::parse(r.out);
    bool has_lhs = false;
    bool has_line = false;
    for (const auto& row : doc["rows"]) {
      has_lhs = has_lhs || row["series"] == "tan_lhs";
      has_line = has_line || row["series"] == "line";
    }
    CHECK(has_lhs);
    CHECK(has_line);
  }
}
