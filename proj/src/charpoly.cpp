#include "cyclap/charpoly.hpp"

#include <string>

namespace cyclap {

namespace {

Complex cplx(double re, const PrecisionContext& ctx) { return ctx.complex(ctx.real(re)); }

double parity(int k) { return (k % 2 == 0) ? 1.0 : -1.0; }

Real max_abs(const std::vector<Complex>& v, mpfr_prec_t bits) {
  Real m(bits);
  for (const Complex& z : v) m = max(m, abs(z));
  return m;
}

}  // namespace

CornerPerturbation CornerPerturbation::laplacian(const AlphaParam& a) {
  const Complex& al = a.value();
  const Complex al_bar = conj(al);
  return {1.0 - al_bar, al_bar, al, 1.0 - al};
}

ProblemInstance::ProblemInstance(AlphaParam alpha, int n) : alpha_(std::move(alpha)), n_(n) {
  if (n < 3) throw DomainError("n must be at least 3, got " + std::to_string(n));
}

MatrixDense::MatrixDense(int n, mpfr_prec_t bits)
    : n_(n), data_(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), Complex(bits)) {
  if (n < 1) throw DomainError("matrix size must be positive");
}

std::size_t MatrixDense::index(int row, int col) const {
  if (row < 0 || row >= n_ || col < 0 || col >= n_) throw DomainError("matrix index out of range");
  return static_cast<std::size_t>(row) * static_cast<std::size_t>(n_) +
         static_cast<std::size_t>(col);
}

bool MatrixDense::is_real() const {
  for (const Complex& z : data_) {
    if (!z.is_real()) return false;
  }
  return true;
}

std::vector<Complex> MatrixDense::apply(const std::vector<Complex>& v) const {
  if (static_cast<int>(v.size()) != n_) throw DomainError("dimension mismatch in apply");
  std::vector<Complex> out;
  out.reserve(v.size());
  for (int r = 0; r < n_; ++r) {
    Complex acc(v.front().precision());
    for (int c = 0; c < n_; ++c) {
      const Complex& m = at(r, c);
      if (!m.re.is_zero() || !m.im.is_zero()) acc += m * v[static_cast<std::size_t>(c)];
    }
    out.push_back(std::move(acc));
  }
  return out;
}

MatrixDense build_A(const CornerPerturbation& cp, int n, const PrecisionContext& ctx) {
  if (n < 3) throw DomainError("n must be at least 3");
  MatrixDense m(n, ctx.prec());
  for (int i = 0; i < n; ++i) {
    m.at(i, i) = cplx(2.0, ctx);
    if (i + 1 < n) {
      m.at(i, i + 1) = cplx(-1.0, ctx);
      m.at(i + 1, i) = cplx(-1.0, ctx);
    }
  }
  m.at(0, 0) = 2.0 - cp.delta;
  m.at(0, n - 1) = -cp.epsilon;
  m.at(n - 1, 0) = -cp.sigma;
  m.at(n - 1, n - 1) = 2.0 - cp.tau;
  return m;
}

MatrixDense build_L(const ProblemInstance& inst, const PrecisionContext& ctx) {
  return build_A(CornerPerturbation::laplacian(inst.alpha()), inst.n(), ctx);
}

std::vector<Complex> apply_L(const ProblemInstance& inst, const std::vector<Complex>& v) {
  const int n = inst.n();
  if (static_cast<int>(v.size()) != n) throw DomainError("dimension mismatch in apply_L");
  const Complex& al = inst.alpha().value();
  const Complex al_bar = conj(al);
  std::vector<Complex> out;
  out.reserve(v.size());
  const auto at = [&](int k) -> const Complex& { return v[static_cast<std::size_t>(k)]; };
  // Row 1: (1 + conj a) v1 - v2 - conj a vn = v1 - v2 + conj a (v1 - vn).
  out.push_back(at(0) - at(1) + al_bar * (at(0) - at(n - 1)));
  for (int k = 1; k + 1 < n; ++k) {
    out.push_back(at(k) * 2.0 - at(k - 1) - at(k + 1));
  }
  out.push_back(at(n - 1) - at(n - 2) + al * (at(n - 1) - at(0)));
  return out;
}

Complex charpoly_A(const CornerPerturbation& cp, int n, const Complex& lambda,
                   const PrecisionContext& ctx) {
  if (n < 3) throw DomainError("n must be at least 3");
  Complex s = lambda - 2.0;
  s.re = ldexp(s.re, -1);
  s.im = ldexp(s.im, -1);
  const auto u = chebyshev_U_table(n, s);
  const auto U = [&](int k) -> const Complex& { return u[static_cast<std::size_t>(k + 1)]; };
  Complex d = U(n);
  d += (cp.delta + cp.tau) * U(n - 1);
  d += (cp.delta * cp.tau - cp.epsilon * cp.sigma) * U(n - 2);
  d += (cp.epsilon + cp.sigma) * parity(n + 1);
  (void)ctx;
  return d;
}

Real charpoly_L(const ProblemInstance& inst, const Real& lambda, const PrecisionContext& ctx) {
  const int n = inst.n();
  const Real& re = inst.alpha().re();
  const Real s = ldexp(lambda - 2.0, -1);
  const auto u = chebyshev_U_table(n - 1, s);
  const Real& u1 = u[static_cast<std::size_t>(n)];
  const Real& u2 = u[static_cast<std::size_t>(n - 1)];
  const Real two_re = ldexp(re, 1);
  (void)ctx;
  return (lambda - two_re) * u1 - two_re * u2 + two_re * parity(n + 1);
}

Complex charpoly_L(const ProblemInstance& inst, const Complex& lambda,
                   const PrecisionContext& ctx) {
  const int n = inst.n();
  const Real two_re = ldexp(inst.alpha().re(), 1);
  Complex s = lambda - 2.0;
  s.re = ldexp(s.re, -1);
  s.im = ldexp(s.im, -1);
  const auto u = chebyshev_U_table(n - 1, s);
  const Complex& u1 = u[static_cast<std::size_t>(n)];
  const Complex& u2 = u[static_cast<std::size_t>(n - 1)];
  Complex out = (lambda - two_re) * u1;
  out -= u2 * two_re;
  out += ctx.complex(two_re * parity(n + 1));
  return out;
}

Real factor_p(int n, const Real& t, const PrecisionContext& ctx) {
  if (n < 3) throw DomainError("n must be at least 3");
  if (t <= 0.0 || t > 2.0) throw DomainError("factor_p requires t in (0, 2]");
  (void)ctx;
  return (sqr(t) - 4.0) * chebyshev_U(n - 1, ldexp(t, -1));
}

Real factor_q(const ProblemInstance& inst, const Real& t, const PrecisionContext& ctx) {
  if (t <= 0.0 || t > 2.0) throw DomainError("factor_q requires t in (0, 2]");
  const int n = inst.n();
  const Real& a = inst.alpha().re();
  const Real half_t = ldexp(t, -1);
  (void)ctx;
  return (1.0 - a) * chebyshev_T(n, half_t) + a * half_t * chebyshev_U(n - 1, half_t);
}

std::vector<Complex> eigvec_A(const CornerPerturbation& cp, int n, const Complex& lambda,
                              const PrecisionContext& ctx) {
  if (n < 3) throw DomainError("n must be at least 3");
  const Real tol = ctx.default_tol();
  const Real boundary_tol = tol * 4.0;
  const Complex one = cplx(1.0, ctx);

  if (abs(lambda) <= boundary_tol) {
    if (abs(cp.delta + cp.epsilon - one) <= tol && abs(cp.sigma + cp.tau - one) <= tol) {
      return std::vector<Complex>(static_cast<std::size_t>(n), one);
    }
    throw EigenvalueAtBoundary("lambda = 0 without delta + epsilon = 1 and sigma + tau = 1");
  }
  if (abs(lambda - 4.0) <= boundary_tol) {
    const double sn = parity(n);
    // Row 1 of (A - 4I)[(-1)^k] vanishes iff (-1)^n epsilon - delta = 1,
    // row n iff (-1)^n sigma - tau = 1.
    if (abs(cp.epsilon * sn - cp.delta - one) <= tol &&
        abs(cp.sigma * sn - cp.tau - one) <= tol) {
      std::vector<Complex> v;
      v.reserve(static_cast<std::size_t>(n));
      for (int k = 1; k <= n; ++k) v.push_back(cplx(parity(k), ctx));
      return v;
    }
    throw EigenvalueAtBoundary(
        "lambda = 4 without (-1)^n epsilon - delta = 1 and (-1)^n sigma - tau = 1");
  }

  Complex s = lambda - 2.0;
  s.re = ldexp(s.re, -1);
  s.im = ldexp(s.im, -1);
  const auto u = chebyshev_U_table(n, s);
  const auto U = [&](int k) -> const Complex& { return u[static_cast<std::size_t>(k + 1)]; };
  const double sn = parity(n);
  const Real threshold = tol * static_cast<double>(n);

  std::vector<Complex> v;
  v.reserve(static_cast<std::size_t>(n));
  for (int k = 1; k <= n; ++k) {
    Complex c = U(k - 1);
    if (k >= 2) c += cp.delta * U(k - 2);
    c += cp.epsilon * U(n - k - 1) * sn;
    v.push_back(c * parity(k - 1));
  }
  if (max_abs(v, ctx.prec()) > threshold) return v;

  v.clear();
  for (int k = 1; k <= n; ++k) {
    Complex c(ctx.prec());
    if (k >= 2) c += cp.sigma * U(k - 2);
    c += cp.tau * U(n - k - 1) * sn;
    c += U(n - k) * sn;
    v.push_back(c * parity(k - 1));
  }
  if (max_abs(v, ctx.prec()) > threshold) return v;
  throw DegenerateCase("both closed-form eigenvector branches vanish");
}

}  // namespace cyclap
