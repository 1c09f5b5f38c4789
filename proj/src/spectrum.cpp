#include "cyclap/spectrum.hpp"

#include <memory>
#include <string>

namespace cyclap {

namespace {

constexpr int kNormGuardBits = 64;

Complex widen(const Complex& z, mpfr_prec_t bits) {
  Complex w(bits);
  mpfr_set(w.re.raw(), z.re.raw(), MPFR_RNDN);
  mpfr_set(w.im.raw(), z.im.raw(), MPFR_RNDN);
  return w;
}

Real mesh_angle(int k, int n, const PrecisionContext& ctx) {
  Real x = ctx.pi();
  x.mul_long(k);
  x.div_long(n);
  return x;
}

// 2 asin(sqrt(lambda)/2), the inverse of g on [0, pi].
Real g_inverse(const Real& lambda) { return ldexp(asin(ldexp(sqrt(lambda), -1)), 1); }

struct EvenSolver {
  SpectrumMethod method;
  std::shared_ptr<const BisectionTables> tables;
};

EvenSolver prepare(const ProblemInstance& inst, SpectrumMethod method, const PrecisionContext& ctx,
                   const Real& tol) {
  EvenSolver s{method, nullptr};
  if (method == SpectrumMethod::fixed_point && !fixed_point_contracts(inst.alpha(), inst.n())) {
    throw ContractionNotGuaranteed("fixed-point iteration needs n > K1(alpha)");
  }
  if (method == SpectrumMethod::bisection) s.tables = make_bisection_tables(inst.n(), ctx, tol);
  return s;
}

void fill_odd(const ProblemInstance& inst, int j, const PrecisionContext& ctx, SpectrumResult& r) {
  const auto i = static_cast<std::size_t>(j - 1);
  r.thetas[i] = mesh_angle(j - 1, inst.n(), ctx);
  r.lambdas[i] = (j == 1) ? ctx.real(0.0) : g(r.thetas[i]);
  r.methods[i] = Provenance::closed_form;
}

void fill_even(const ProblemInstance& inst, int j, const EvenSolver& s,
               const PrecisionContext& ctx, const Real& tol, SpectrumResult& r) {
  const auto i = static_cast<std::size_t>(j - 1);
  const AlphaParam& a = inst.alpha();
  const int n = inst.n();
  switch (s.method) {
    case SpectrumMethod::newton:
      r.reports[i] = solve_theta_newton(a, n, j, ctx, tol);
      r.methods[i] = Provenance::newton;
      break;
    case SpectrumMethod::bisection:
      r.reports[i] = solve_theta_bisection(a, n, j, ctx, tol, *s.tables);
      r.methods[i] = Provenance::bisection;
      break;
    case SpectrumMethod::fixed_point:
      r.reports[i] = solve_theta_fixed_point(a, n, j, ctx, tol);
      r.methods[i] = Provenance::fixed_point;
      break;
    case SpectrumMethod::asymptotic: {
      r.lambdas[i] = lambda_second_order(a, n, j, ctx).value;
      r.thetas[i] = g_inverse(r.lambdas[i]);
      r.methods[i] = Provenance::asymptotic;
      return;
    }
  }
  r.thetas[i] = r.reports[i]->root;
  r.lambdas[i] = g(r.thetas[i]);
}

SpectrumResult empty_result(int n, const PrecisionContext& ctx) {
  SpectrumResult r;
  const auto size = static_cast<std::size_t>(n);
  r.lambdas.assign(size, Real(ctx.prec()));
  r.thetas.assign(size, Real(ctx.prec()));
  r.methods.assign(size, Provenance::closed_form);
  r.reports.resize(size);
  return r;
}

void check_order(const SpectrumResult& r, SpectrumMethod method) {
  // Root finders land strictly inside the localization intervals, so the
  // spectrum comes out sorted; the asymptotic values carry no such promise.
  if (method == SpectrumMethod::asymptotic) return;
  for (std::size_t i = 1; i < r.lambdas.size(); ++i) {
    if (r.lambdas[i] < r.lambdas[i - 1]) {
      throw NoConvergence("eigenvalues out of order at j = " + std::to_string(i + 1));
    }
  }
}

}  // namespace

const char* spectrum_method_name(SpectrumMethod m) {
  switch (m) {
    case SpectrumMethod::newton:
      return "newton";
    case SpectrumMethod::bisection:
      return "bisect";
    case SpectrumMethod::fixed_point:
      return "fixed-point";
    case SpectrumMethod::asymptotic:
      return "asymptotic";
  }
  return "unknown";
}

SpectrumMethod parse_spectrum_method(std::string_view text) {
  if (text == "newton") return SpectrumMethod::newton;
  if (text == "bisect" || text == "bisection") return SpectrumMethod::bisection;
  if (text == "fixed-point" || text == "fixed_point") return SpectrumMethod::fixed_point;
  if (text == "asymptotic") return SpectrumMethod::asymptotic;
  throw DomainError("unknown method '" + std::string(text) + "'");
}

const char* provenance_name(Provenance p) {
  switch (p) {
    case Provenance::closed_form:
      return "closed_form";
    case Provenance::newton:
      return "newton";
    case Provenance::bisection:
      return "bisection";
    case Provenance::fixed_point:
      return "fixed_point";
    case Provenance::asymptotic:
      return "asymptotic";
  }
  return "unknown";
}

SpectrumResult full_spectrum(const ProblemInstance& inst, SpectrumMethod method,
                             const PrecisionContext& ctx, const Real& tol) {
  const int n = inst.n();
  const EvenSolver solver = prepare(inst, method, ctx, tol);
  SpectrumResult r = empty_result(n, ctx);
  for (int j = 1; j <= n; j += 2) fill_odd(inst, j, ctx, r);
  const int evens = n / 2;
  std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic)
  for (int e = 0; e < evens; ++e) {
    try {
      fill_even(inst, 2 * (e + 1), solver, ctx, tol, r);
    } catch (...) {
#pragma omp critical(cyclap_spectrum_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  check_order(r, method);
  return r;
}

SpectrumResult full_spectrum_serial(const ProblemInstance& inst, SpectrumMethod method,
                                    const PrecisionContext& ctx, const Real& tol) {
  const int n = inst.n();
  const EvenSolver solver = prepare(inst, method, ctx, tol);
  SpectrumResult r = empty_result(n, ctx);
  for (int j = 1; j <= n; ++j) {
    if (j % 2 == 1) {
      fill_odd(inst, j, ctx, r);
    } else {
      fill_even(inst, j, solver, ctx, tol, r);
    }
  }
  check_order(r, method);
  return r;
}

std::vector<Complex> eigenvector_coords(const ProblemInstance& inst, int j, const Real& theta,
                                        const PrecisionContext& ctx) {
  const int n = inst.n();
  if (j < 1 || j > n) throw DomainError("eigenvector index out of range");
  const auto size = static_cast<std::size_t>(n);
  if (j == 1) return std::vector<Complex>(size, ctx.complex(ctx.real(1.0)));
  const Complex al_bar = conj(inst.alpha().value());
  const Complex one_minus = 1.0 - al_bar;
  const SinCosTable sc = sin_cos_multiples(theta, n);
  std::vector<Complex> v;
  v.reserve(size);
  for (int k = 1; k <= n; ++k) {
    Complex c = al_bar * sc.sin[static_cast<std::size_t>(n - k)];
    c -= one_minus * sc.sin[static_cast<std::size_t>(k - 1)];
    c.re += sc.sin[static_cast<std::size_t>(k)];
    v.push_back(std::move(c));
  }
  return v;
}

Real euclidean_norm(const std::vector<Complex>& v) {
  Real s(v.empty() ? 53 : v.front().precision());
  for (const Complex& z : v) s += norm(z);
  return sqrt(s);
}

Real eigvec_norm_exact(const ProblemInstance& inst, int j, const Real& theta,
                       const PrecisionContext& ctx) {
  const int n = inst.n();
  if (j < 2 || j > n) throw DomainError("norm formula needs 2 <= j <= n");
  const AlphaParam& a = inst.alpha();
  if (j % 2 == 1) {
    return abs(1.0 - a.value()) * sqrt(ldexp(g(theta) * static_cast<double>(n), -1));
  }
  // The two terms nearly cancel for small norms (small j with alpha near 1),
  // so they are formed with guard bits.
  const PrecisionContext wide(ctx.bits() + kNormGuardBits);
  const AlphaParam aw(widen(a.value(), wide.prec()));
  Real t(wide.prec());
  mpfr_set(t.raw(), theta.raw(), MPFR_RNDN);
  const Real e = eta(aw, t, wide);
  Real out = sqrt(nu(aw, t, wide) * static_cast<double>(n) + sin(e) / sin(t) * xi(aw, t, wide));
  out.set_precision(ctx.prec());
  return out;
}

Real eigvec_norm_asympt(const ProblemInstance& inst, int j, const Real& theta,
                        const PrecisionContext& ctx) {
  require_even_index(inst.n(), j);
  return sqrt(nu(inst.alpha(), theta, ctx) * static_cast<double>(inst.n()));
}

Eigenvector eigenvector(const ProblemInstance& inst, int j, const Real& theta,
                        const PrecisionContext& ctx) {
  Eigenvector out;
  out.coords = eigenvector_coords(inst, j, theta, ctx);
  if (j == 1) {
    out.exact_norm = sqrt(ctx.real(static_cast<double>(inst.n())));
    out.asympt_norm = out.exact_norm;
  } else if (j % 2 == 1) {
    out.exact_norm = eigvec_norm_exact(inst, j, theta, ctx);
    out.asympt_norm = out.exact_norm;
  } else {
    out.exact_norm = eigvec_norm_exact(inst, j, theta, ctx);
    out.asympt_norm = eigvec_norm_asympt(inst, j, theta, ctx);
  }
  return out;
}

Real residual(const ProblemInstance& inst, const Real& lambda, const std::vector<Complex>& v,
              const PrecisionContext& ctx) {
  if (static_cast<int>(v.size()) != inst.n()) throw DomainError("dimension mismatch in residual");
  std::vector<Complex> lv = apply_L(inst, v);
  Real s(ctx.prec());
  for (std::size_t k = 0; k < v.size(); ++k) s += norm(lv[k] - v[k] * lambda);
  return sqrt(s);
}

std::vector<Real> spectrum_residuals(const ProblemInstance& inst, const SpectrumResult& spec,
                                     const PrecisionContext& ctx) {
  const int n = inst.n();
  std::vector<Real> out(static_cast<std::size_t>(n), Real(ctx.prec()));
#pragma omp parallel for schedule(dynamic)
  for (int j = 1; j <= n; ++j) {
    const auto i = static_cast<std::size_t>(j - 1);
    out[i] = residual(inst, spec.lambdas[i], eigenvector_coords(inst, j, spec.thetas[i], ctx), ctx);
  }
  return out;
}

std::vector<SweepPoint> alpha_sweep(int n, int j, const std::vector<Real>& alphas,
                                    const PrecisionContext& ctx, const Real& tol) {
  require_even_index(n, j);
  std::vector<SweepPoint> out;
  out.reserve(alphas.size());
  for (std::size_t i = 0; i < alphas.size(); ++i) {
    if (i > 0 && !(alphas[i - 1] < alphas[i])) throw DomainError("alphas must be ascending");
    const AlphaParam a(alphas[i]);
    out.push_back({alphas[i], g(solve_theta_newton(a, n, j, ctx, tol).root)});
  }
  return out;
}

}  // namespace cyclap
