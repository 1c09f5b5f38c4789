// Acceptance suite: one PASS/FAIL line per criterion.
//
//   acceptance            run all criteria
//   acceptance 1 3 6      run a subset
//
// Criteria 4, 5 and 8 share one 3322-bit sweep over all rational alpha with
// denominator <= 10 and 3 <= n <= 64.

#include "cyclap/cli.hpp"
#include "cyclap/oracle.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>

using namespace cyclap;

namespace {

constexpr int kBits = 3322;

struct Outcome {
  bool pass = true;
  std::string detail;
};

class Stopwatch {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

std::string fmt(double x, const char* spec = "%.4g") {
  char buf[64];
  std::snprintf(buf, sizeof buf, spec, x);
  return buf;
}

std::string log10_text(const Real& x) {
  if (x.is_zero()) return "0";
  return "1e" + fmt(x.log10_abs(), "%.1f");
}

Real mesh(const PrecisionContext& ctx, long k, long m) {
  Real x = ctx.pi();
  x.mul_long(k);
  x.div_long(m);
  return x;
}

// Criteria 1-3: published table cells at 3322 bits.
Outcome table_criterion(cli::TableId id, const std::map<std::pair<std::string, int>, double>& wanted,
                        const std::vector<int>& js) {
  Stopwatch sw;
  const PrecisionContext ctx(kBits);
  const double tol = cli::table_tolerance(id);
  Outcome o;
  std::ostringstream os;
  std::set<std::string> alphas;
  for (const auto& [key, value] : wanted) alphas.insert(key.first);
  const std::vector<cli::TableCell> cells =
      cli::compute_table(id, {alphas.begin(), alphas.end()}, {256, 512}, ctx);
  int matched = 0;
  for (const cli::TableCell& c : cells) {
    if (!js.empty() && std::find(js.begin(), js.end(), c.j) == js.end()) continue;
    const auto it = wanted.find({c.alpha, c.n * 10 + c.j});
    if (it == wanted.end()) continue;
    const double got = c.scaled.to_double();
    const double dev = got / it->second - 1.0;
    const bool ok = std::fabs(dev) <= tol;
    o.pass = o.pass && ok;
    ++matched;
    os << " [a=" << c.alpha << " n=" << c.n;
    if (c.j) os << " j=" << c.j;
    os << ": " << fmt(got, "%.4f") << " vs " << it->second << (ok ? "" : " OUT") << "]";
  }
  if (matched != static_cast<int>(wanted.size())) {
    o.pass = false;
    os << " missing cells";
  }
  o.detail = os.str() + " tol " + fmt(tol * 100.0, "%.0f") + "%, " + fmt(sw.seconds(), "%.1f") +
             " s";
  return o;
}

// Criteria 4, 5 and 8 over the shared sweep.
struct SweepOutcome {
  Outcome residual;
  Outcome agreement;
  Outcome rates;
};

SweepOutcome sweep_criteria() {
  Stopwatch sw;
  const PrecisionContext ctx(kBits);
  const Real tol = ctx.default_tol();
  const Real res_bound = pow10(-990, ctx.prec());
  const Real agree_bound = pow10(-980, ctx.prec());
  const Real noise = ldexp(ctx.eps(), 32);
  Real worst_res = ctx.real(0.0);
  Real worst_bi = ctx.real(0.0);
  Real worst_fp = ctx.real(0.0);
  double worst_linear = 0.0;  // observed / allowed
  double worst_quad = 0.0;
  long instances = 0;
  long fp_instances = 0;
  long ratios = 0;
  std::string worst_res_at;

  for (const std::string& text : cli::rational_alphas(10)) {
    const AlphaParam a = AlphaParam::parse(text, ctx);
    for (int n = 3; n <= 64; ++n) {
      const ProblemInstance inst(a, n);
      const double nd = n;
      const SpectrumResult nt = full_spectrum(inst, SpectrumMethod::newton, ctx, tol);
      const SpectrumResult bi = full_spectrum(inst, SpectrumMethod::bisection, ctx, tol);
      ++instances;
      for (const Real& r : spectrum_residuals(inst, nt, ctx)) {
        if (r > worst_res) {
          worst_res = r;
          worst_res_at = text + ",n=" + std::to_string(n);
        }
      }
      for (std::size_t i = 0; i < nt.lambdas.size(); ++i) {
        worst_bi = max(worst_bi, abs(nt.lambdas[i] - bi.lambdas[i]));
      }
      if (fixed_point_contracts(a, n)) {
        ++fp_instances;
        const SpectrumResult fp = full_spectrum(inst, SpectrumMethod::fixed_point, ctx, tol);
        for (std::size_t i = 0; i < nt.lambdas.size(); ++i) {
          worst_fp = max(worst_fp, abs(nt.lambdas[i] - fp.lambdas[i]));
        }
      }

      const SolverConstants sc = solver_constants(a, n);
      const Real gamma = sc.gamma_n * 1.001;
      const Real m_bound = sc.K2 / (2.0 * nd) * 1.001;
      const bool quadratic = sc.K2 * M_PI / 2.0 < nd * nd;
      for (int j = 2; j <= n; j += 2) {
        const SolveReport& r = *nt.reports[static_cast<std::size_t>(j - 1)];
        std::vector<Real> err;
        for (const Real& y : r.iterates) err.push_back(abs(y - r.root));
        for (std::size_t k = 1; k + 1 < err.size(); ++k) {
          if (err[k] <= noise || err[k + 1] <= noise) continue;
          ++ratios;
          const Real lin = err[k + 1] / (err[k] * gamma);
          worst_linear = std::max(worst_linear, lin.to_double());
          if (quadratic) {
            const Real q = err[k + 1] / (m_bound * sqr(err[k]));
            worst_quad = std::max(worst_quad, q.to_double());
          }
        }
      }
    }
  }
  const std::string when = ", " + fmt(sw.seconds(), "%.0f") + " s for the shared sweep";
  SweepOutcome out;
  out.residual.pass = worst_res < res_bound;
  out.residual.detail = "max ||L v - lambda v|| = " + log10_text(worst_res) + " (at " +
                        worst_res_at + ") over " + std::to_string(instances) +
                        " instances, bound 1e-990" + when;
  out.agreement.pass = worst_bi < agree_bound && worst_fp < agree_bound;
  out.agreement.detail = "max |N - bisec| = " + log10_text(worst_bi) + ", max |fp - N| = " +
                         log10_text(worst_fp) + " (" + std::to_string(fp_instances) +
                         " instances with n > K1), bound 1e-980";
  out.rates.pass = worst_linear <= 1.0 && worst_quad <= 1.0;
  out.rates.detail = "worst ratio / (1.001 gamma) = " + fmt(worst_linear) +
                     ", worst e_{m+1} / (1.001 K2/(2n) e_m^2) = " + fmt(worst_quad) + " over " +
                     std::to_string(ratios) + " steps";
  return out;
}

// Criterion 6: dense oracle against Newton.
Outcome oracle_criterion() {
  Stopwatch sw;
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> unit(0.02, 0.98);
  std::vector<double> alphas;
  for (int i = 0; i < 20; ++i) alphas.push_back(unit(rng));
  Outcome o;
  std::ostringstream os;
  for (int bits : {53, 200}) {
    const PrecisionContext ctx(bits);
    const Real bound = pow10(bits == 53 ? -12 : -40, ctx.prec());
    Real worst = ctx.real(0.0);
    for (double av : alphas) {
      for (int n = 3; n <= 24; ++n) {
        const ProblemInstance inst(AlphaParam(ctx.real(av)), n);
        const SpectrumResult r = full_spectrum(inst, SpectrumMethod::newton, ctx, ctx.default_tol());
        const OracleSpectrum d = dense_sym_eig(build_L(inst, ctx), ctx, ctx.eps());
        for (std::size_t i = 0; i < r.lambdas.size(); ++i) {
          worst = max(worst, abs(r.lambdas[i] - d.lambdas[i]));
        }
      }
    }
    o.pass = o.pass && worst < bound;
    os << bits << " bits: max " << log10_text(worst) << " (bound " << log10_text(bound) << "); ";
  }
  o.detail = os.str() + "20 alphas, 3 <= n <= 24, " + fmt(sw.seconds(), "%.1f") + " s";
  return o;
}

// Criterion 7: property suite at 200 bits.
Outcome property_criterion() {
  Stopwatch sw;
  const PrecisionContext ctx(200);
  const Real tol = ctx.default_tol();
  std::vector<std::string> failed;
  auto expect = [&](bool ok, const std::string& name) {
    if (!ok && std::find(failed.begin(), failed.end(), name) == failed.end()) {
      failed.push_back(name);
    }
  };

  // Localization, odd closed forms, trace, alpha-monotonicity over the sweep.
  std::map<int, std::vector<Real>> prev;
  for (const std::string& text : cli::rational_alphas(10)) {
    const AlphaParam a = AlphaParam::parse(text, ctx);
    for (int n = 3; n <= 64; ++n) {
      const ProblemInstance inst(a, n);
      const SpectrumResult s = full_spectrum(inst, SpectrumMethod::newton, ctx, tol);
      Real sum = ctx.real(0.0);
      std::vector<Real> even;
      for (int j = 1; j <= n; ++j) {
        const auto i = static_cast<std::size_t>(j - 1);
        sum += s.lambdas[i];
        if (j % 2 == 1) {
          expect(s.lambdas[i] == g(mesh(ctx, j - 1, n)), "odd closed form");
          const std::vector<Complex> v = eigenvector_coords(inst, j, s.thetas[i], ctx);
          expect(residual(inst, s.lambdas[i], v, ctx) <=
                     ctx.eps() * (1000.0 * n) * max(euclidean_norm(v), ctx.real(1.0)),
                 "odd eigenpair residual");
        } else {
          expect(s.thetas[i] > mesh(ctx, j - 1, n) && s.thetas[i] < mesh(ctx, j, n),
                 "localization");
          even.push_back(s.lambdas[i]);
        }
      }
      const Real target = 2.0 * n - 2.0 + ldexp(a.re(), 1);
      expect(abs(sum - target) <= ctx.eps() * (1000.0 * n), "trace identity");
      auto& p = prev[n];
      for (std::size_t e = 0; e < p.size(); ++e) expect(even[e] > p[e], "alpha monotonicity");
      p = std::move(even);

      if (a.is_half()) {
        for (SpectrumMethod m : {SpectrumMethod::newton, SpectrumMethod::bisection,
                                 SpectrumMethod::fixed_point}) {
          if (m == SpectrumMethod::fixed_point && !fixed_point_contracts(a, n)) continue;
          const SpectrumResult h = full_spectrum(inst, m, ctx, tol);
          for (int j = 2; j <= n; j += 2) {
            const auto i = static_cast<std::size_t>(j - 1);
            expect(abs(h.thetas[i] - mesh(ctx, j, n + 1)) <= ctx.eps() * 64.0,
                   "alpha 1/2 collapse");
          }
        }
      }
    }
  }

  // eta: involution, equivalence of the closed forms, sharpness of K1 and K2.
  std::mt19937_64 rng(77);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (const std::string& text : cli::rational_alphas(10)) {
    const AlphaParam a = AlphaParam::parse(text, ctx);
    const SolverConstants sc = solver_constants(a, 10);
    const Real eta_tol = ctx.eps() * 1e4;
    Real top = ctx.real(0.0);
    for (int s = 0; s < 64; ++s) {
      const Real x = ctx.pi() * (0.01 + 0.98 * unit(rng));
      const Real e = eta(a, x, ctx);
      expect(abs(eta(a, e, ctx) - x) <= eta_tol, "eta involution");
      for (EtaFormula f : {EtaFormula::cot_form, EtaFormula::tan_form,
                           EtaFormula::asin_kappa_form, EtaFormula::asin_alpha_form}) {
        expect(abs(eta_formula(a, x, f, ctx) - e) <= eta_tol, "eta equivalence");
      }
      const Real p = abs(eta_prime(a, x, ctx));
      top = max(top, p);
      expect(p <= sc.K1, "eta' bound");
      expect(abs(eta_second(a, x, ctx)) <= sc.K2 + eta_tol, "eta'' bound");
    }
    const Real edge = max(abs(eta_prime(a, ctx.real(0.0), ctx)), abs(eta_prime(a, ctx.pi(), ctx)));
    expect(abs(edge - sc.K1) <= sc.K1 * eta_tol, "K1 attained at an end point");
  }

  // Newton certified errors against a bisection at four times the precision.
  {
    const PrecisionContext lo(64);
    const PrecisionContext hi(256);
    std::uniform_int_distribution<int> num(1, 999);
    std::uniform_int_distribution<int> size(3, 200);
    for (int trial = 0; trial < 500; ++trial) {
      const double av = num(rng) / 1000.0;
      const int n = size(rng);
      std::uniform_int_distribution<int> half(1, n / 2);
      const int j = 2 * half(rng);
      const SolveReport r =
          solve_theta_newton(AlphaParam(lo.real(av)), n, j, lo, lo.default_tol());
      const Real ref =
          solve_theta_bisection(AlphaParam(hi.real(av)), n, j, hi, hi.default_tol()).root;
      expect(abs(r.root - ref) <= r.certified_error, "Newton certified error");
    }
  }

  // det(lambda - L) does not see Im(alpha).
  {
    std::uniform_real_distribution<double> im(-2.0, 2.0);
    std::uniform_int_distribution<int> size(3, 40);
    for (int trial = 0; trial < 200; ++trial) {
      const Real re = ctx.real(0.01 + 0.98 * unit(rng));
      const int n = size(rng);
      const ProblemInstance real_inst(AlphaParam(re), n);
      const ProblemInstance cplx_inst(AlphaParam(Complex(re, ctx.real(im(rng)))), n);
      const Complex l(ctx.real(4.5 * unit(rng) - 0.25), ctx.real(im(rng)));
      const Complex pr = charpoly_L(real_inst, l, ctx);
      const Complex pa =
          charpoly_A(CornerPerturbation::laplacian(cplx_inst.alpha()), n, l, ctx);
      expect(abs(charpoly_L(cplx_inst, l, ctx) - pr) == 0.0, "complex alpha invariance");
      expect(abs(pa - pr) <= (abs(pr) + 1.0) * ctx.eps() * 1e6, "complex alpha invariance");
    }
  }

  Outcome o;
  o.pass = failed.empty();
  std::string names;
  for (const std::string& f : failed) names += (names.empty() ? "" : ", ") + f;
  o.detail = (o.pass ? std::string("localization, odd closed forms, trace, eta identities and "
                                   "bounds, 500 certified errors, alpha 1/2 collapse, complex "
                                   "invariance, alpha monotonicity")
                     : "failed: " + names) +
             ", " + fmt(sw.seconds(), "%.1f") + " s";
  return o;
}

void report(int id, const char* title, const Outcome& o) {
  std::printf("criterion %d %s: %s - %s\n", id, o.pass ? "PASS" : "FAIL", title,
              o.detail.c_str());
  std::fflush(stdout);
}

}  // namespace

int main(int argc, char** argv) {
  std::set<int> wanted;
  for (int i = 1; i < argc; ++i) wanted.insert(std::atoi(argv[i]));
  auto on = [&](int id) { return wanted.empty() || wanted.count(id) > 0; };
  bool all_pass = true;
  auto record = [&](int id, const char* title, const Outcome& o) {
    report(id, title, o);
    all_pass = all_pass && o.pass;
  };

  try {
    if (on(1)) {
      record(1, "Table 1 (n^3 max |asympt - N|)",
             table_criterion(cli::TableId::asympt_T1,
                             {{{"1/3", 2560}, 38.24}, {{"1/3", 5120}, 38.86},
                              {{"4/5", 2560}, 11.58}, {{"4/5", 5120}, 11.62}},
                             {}));
    }
    if (on(2)) {
      record(2, "Table 2 (n^7 max |N2 - N|)",
             table_criterion(cli::TableId::newton2_T2,
                             {{{"1/3", 2560}, 2.97}, {{"1/3", 5120}, 3.01},
                              {{"4/5", 2560}, 45.41}, {{"4/5", 5120}, 46.33}},
                             {}));
    }
    if (on(3)) {
      record(3, "Table 3 ((n/j)^4 |N - small j|)",
             table_criterion(cli::TableId::smallj_T3,
                             {{{"1/3", 2562}, 21.80}, {{"1/3", 2564}, 0.18},
                              {{"1/3", 2566}, 4.25}, {{"1/3", 5122}, 21.65},
                              {{"1/3", 5124}, 0.44}, {{"1/3", 5126}, 4.53}},
                             {2, 4, 6}));
    }
    if (on(4) || on(5) || on(8)) {
      const SweepOutcome s = sweep_criteria();
      if (on(4)) record(4, "residuals at 3322 bits", s.residual);
      if (on(5)) record(5, "cross-method agreement at 3322 bits", s.agreement);
      if (on(8)) record(8, "Newton convergence rates", s.rates);
    }
    if (on(6)) record(6, "oracle agreement", oracle_criterion());
    if (on(7)) record(7, "property suite", property_criterion());
  } catch (const std::exception& e) {
    std::printf("acceptance aborted: %s\n", e.what());
    return 2;
  }
  return all_pass ? 0 : 1;
}
