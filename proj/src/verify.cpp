#include "cyclap/cli.hpp"
#include "cyclap/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

namespace cyclap::cli {

namespace {

// Running maximum of one named check. Counting checks record the number of
// violations against a threshold of zero.
class Check {
 public:
  Check(std::string name, Real threshold) : name_(std::move(name)), threshold_(std::move(threshold)),
                                            worst_(threshold_.precision()) {}

  void observe(const Real& err) {
    ++cases_;
    if (err > worst_ || !err.is_finite()) worst_ = err;
  }
  void count(bool violated) { observe(Real(violated ? 1.0 : 0.0, worst_.precision())); }

  CheckResult result() const {
    CheckResult r;
    r.name = name_;
    r.cases = cases_;
    r.max_error = worst_.to_string(3);
    r.threshold = threshold_.to_string(3);
    r.passed = worst_.is_finite() && worst_ <= threshold_;
    return r;
  }

 private:
  std::string name_;
  Real threshold_;
  Real worst_;
  long cases_ = 0;
};

Real mesh(const PrecisionContext& ctx, long k, long m) {
  Real x = ctx.pi();
  x.mul_long(k);
  x.div_long(m);
  return x;
}

}  // namespace

double verify_log10_threshold(int precision_bits) {
  return -(std::floor(0.301 * precision_bits) - 15.0);
}

std::vector<std::string> rational_alphas(int max_den) {
  struct Frac {
    int p;
    int q;
  };
  std::vector<Frac> fr;
  for (int q = 2; q <= max_den; ++q) {
    for (int p = 1; p < q; ++p) {
      if (std::gcd(p, q) == 1) fr.push_back({p, q});
    }
  }
  std::sort(fr.begin(), fr.end(),
            [](const Frac& a, const Frac& b) { return a.p * b.q < b.p * a.q; });
  std::vector<std::string> out;
  for (const Frac& f : fr) out.push_back(std::to_string(f.p) + "/" + std::to_string(f.q));
  return out;
}

std::vector<CheckResult> run_verify(const VerifyConfig& cfg) {
  if (cfg.precision_bits < 53) throw DomainError("precision must be at least 53 bits");
  if (cfg.max_n < 3) throw DomainError("max-n must be at least 3");
  if (!cfg.inject_fault.empty() && cfg.inject_fault != "eta_sign") {
    throw DomainError("unknown fault '" + cfg.inject_fault + "'");
  }
  const bool flip_eta = cfg.inject_fault == "eta_sign";
  const PrecisionContext ctx(cfg.precision_bits);
  const Real thr = pow10(static_cast<long>(verify_log10_threshold(cfg.precision_bits)), ctx.prec());
  const Real tol = ctx.default_tol();
  const Real zero = ctx.real(0.0);
  std::mt19937_64 rng(cfg.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  Check eta_equiv("eta_equivalence", thr);
  Check eta_invol("eta_involution", thr);
  Check factor("charpoly_factorization", thr);
  Check invariance("charpoly_complex_invariance", thr);
  Check local("localization", zero);
  Check trace("trace_identity", ctx.eps() * 1000.0);
  Check resid("residual", thr);
  Check norms("norm_identity", thr);
  Check bisect("bisection_agreement", thr);
  Check fixed("fixed_point_agreement", thr);
  Check certified("certified_error", zero);
  Check half("alpha_half_collapse", thr);
  Check mono("alpha_monotonicity", zero);
  Check linear("newton_linear_rate", ctx.real(1.0));
  Check quad("newton_quadratic_rate", ctx.real(1.0));
  Check oracle("oracle_agreement", thr);

  const std::vector<std::string> alphas = rational_alphas(10);
  // Per n: even-index eigenvalues of the previous alpha, for monotonicity.
  std::vector<std::vector<Real>> prev_even(static_cast<std::size_t>(cfg.max_n) + 1);

  for (const std::string& text : alphas) {
    const AlphaParam a = AlphaParam::parse(text, ctx);

    // Pointwise identities of eta at seeded abscissas in [pi/100, 99 pi/100].
    for (int s = 0; s < 16; ++s) {
      const Real x = ctx.pi() * (0.01 + 0.98 * unit(rng));
      const Real e = eta(a, x, ctx);
      for (EtaFormula f : {EtaFormula::cot_form, EtaFormula::tan_form,
                           EtaFormula::asin_kappa_form, EtaFormula::asin_alpha_form}) {
        Real ef = eta_formula(a, x, f, ctx);
        if (flip_eta && f == EtaFormula::cot_form) ef = -ef;
        eta_equiv.observe(abs(ef - e));
      }
      eta_invol.observe(abs(eta(a, e, ctx) - x));
    }

    for (int n = 3; n <= cfg.max_n; ++n) {
      const ProblemInstance inst(a, n);
      const double nd = n;

      // t D(4 - t^2) = 2 (-1)^n p_n(t) q(t) and invariance under Im(alpha).
      {
        const Real t = ctx.real(0.05 + 1.9 * unit(rng));
        const Real d = charpoly_L(inst, 4.0 - sqr(t), ctx);
        const Real rhs = factor_p(n, t, ctx) * factor_q(inst, t, ctx) * (n % 2 == 0 ? 2.0 : -2.0);
        factor.observe(abs(t * d - rhs) / (1.0 + abs(t * d)));

        const AlphaParam ac(Complex(a.re(), ctx.real(4.0 * unit(rng) - 2.0)));
        const ProblemInstance ic(ac, n);
        const Complex lam(ctx.real(4.5 * unit(rng) - 0.25), ctx.real(unit(rng) - 0.5));
        const Complex pc = charpoly_L(ic, lam, ctx);
        const Complex pr = charpoly_L(inst, lam, ctx);
        const Complex pa = charpoly_A(CornerPerturbation::laplacian(ac), n, lam, ctx);
        const Real scale = abs(pr) + 1.0;
        invariance.observe(max(abs(pc - pr), abs(pa - pr)) / scale);
      }

      const SpectrumResult nt = full_spectrum(inst, SpectrumMethod::newton, ctx, ctx.eps());
      const SpectrumResult bi = full_spectrum(inst, SpectrumMethod::bisection, ctx, tol);
      const SolverConstants sc = solver_constants(a, n);
      const bool contracts = fixed_point_contracts(a, n);

      Real sum = ctx.real(0.0);
      for (const Real& l : nt.lambdas) sum += l;
      trace.observe(abs(sum - (2.0 * nd - 2.0 + ldexp(a.re(), 1))) / nd);

      const std::vector<Real> res = spectrum_residuals(inst, nt, ctx);
      for (const Real& r : res) resid.observe(r);

      std::vector<Real> even;
      for (int j = 1; j <= n; ++j) {
        const auto i = static_cast<std::size_t>(j - 1);
        bisect.observe(abs(nt.lambdas[i] - bi.lambdas[i]));
        if (j >= 2) {
          const Real direct = euclidean_norm(eigenvector_coords(inst, j, nt.thetas[i], ctx));
          norms.observe(abs(direct - eigvec_norm_exact(inst, j, nt.thetas[i], ctx)) /
                        max(direct, ctx.real(1.0)));
        }
        if (j % 2 == 1) continue;
        even.push_back(nt.lambdas[i]);
        const Real lo = mesh(ctx, j - 1, n);
        const Real hi = mesh(ctx, j, n);
        local.count(!(nt.thetas[i] > lo && nt.thetas[i] < hi));
        if (a.is_half()) half.observe(abs(nt.thetas[i] - mesh(ctx, j, n + 1)));

        if (!nt.reports[i] || !bi.reports[i]) throw NoConvergence("missing solver report");
        const SolveReport& nr = *nt.reports[i];
        const SolveReport& br = *bi.reports[i];
        certified.count(abs(nr.root - br.root) > nr.certified_error + br.certified_error);

        // Error ratios of the Newton iterates against the final root, skipping
        // errors within 2^32 ulps of rounding.
        const Real noise = ldexp(ctx.eps(), 32);
        const Real m_bound = sc.K2 / (2.0 * nd);
        const bool quadratic = sc.K2 * M_PI / 2.0 < nd * nd;
        std::vector<Real> err;
        for (const Real& y : nr.iterates) err.push_back(abs(y - nr.root));
        for (std::size_t k = 1; k + 1 < err.size(); ++k) {
          if (err[k + 1] <= noise || err[k] <= noise) continue;
          linear.observe(err[k + 1] / (err[k] * (sc.gamma_n * 1.001)));
          if (quadratic) quad.observe(err[k + 1] / (m_bound * sqr(err[k]) * 1.001));
        }
      }
      if (contracts) {
        const SpectrumResult fp = full_spectrum(inst, SpectrumMethod::fixed_point, ctx, tol);
        for (std::size_t i = 0; i < fp.lambdas.size(); ++i) {
          fixed.observe(abs(fp.lambdas[i] - nt.lambdas[i]));
        }
      }

      auto& prev = prev_even[static_cast<std::size_t>(n)];
      if (!prev.empty()) {
        for (std::size_t e = 0; e < even.size(); ++e) mono.count(!(even[e] > prev[e]));
      }
      prev = std::move(even);
    }
  }

  // Dense oracle on 20 seeded instances with n <= 24.
  const int oracle_max = std::min(24, cfg.max_n);
  std::uniform_int_distribution<int> sizes(3, oracle_max);
  for (int s = 0; s < 20; ++s) {
    const AlphaParam a(ctx.real(0.02 + 0.96 * unit(rng)));
    const ProblemInstance inst(a, sizes(rng));
    const OracleSpectrum o = dense_sym_eig(build_L(inst, ctx), ctx, ctx.eps());
    const SpectrumResult r = full_spectrum(inst, SpectrumMethod::newton, ctx, tol);
    for (std::size_t i = 0; i < r.lambdas.size(); ++i) {
      oracle.observe(abs(o.lambdas[i] - r.lambdas[i]));
    }
  }

  std::vector<CheckResult> out;
  for (const Check* c : {&eta_equiv, &eta_invol, &factor, &invariance, &local, &trace, &resid,
                         &norms, &bisect, &fixed, &certified, &half, &mono, &linear, &quad,
                         &oracle}) {
    out.push_back(c->result());
  }
  return out;
}

}  // namespace cyclap::cli
