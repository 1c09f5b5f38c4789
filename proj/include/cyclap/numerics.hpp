#pragma once

// Working-precision context and the scalar kernels shared by every module:
// Chebyshev polynomials by forward recurrence, the symbol g, and a few
// trigonometric helpers.

#include "cyclap/errors.hpp"
#include "cyclap/real.hpp"

#include <string_view>
#include <utility>
#include <vector>

namespace cyclap {

/// Immutable description of the working precision.
///
/// eps is the unit roundoff 2^(1-bits). The context also caches pi at the
/// working precision so callers do not recompute it in inner loops.
class PrecisionContext {
 public:
  explicit PrecisionContext(int mantissa_bits);

  int bits() const { return bits_; }
  mpfr_prec_t prec() const { return static_cast<mpfr_prec_t>(bits_); }
  const Real& eps() const { return eps_; }
  const Real& pi() const { return pi_; }

  Real real(double v) const { return Real(v, prec()); }
  Real from_long(long v) const { return Real::from_long(v, prec()); }
  Real parse(std::string_view text) const { return Real::parse(text, prec()); }
  Complex complex(const Real& re) const { return Complex(re, Real(prec())); }
  /// Default solver tolerance 2^(8-bits): an 8-bit guard band over eps.
  Real default_tol() const { return ldexp(real(1.0), 8 - bits_); }
  /// Significant decimal digits used when serializing values.
  int decimal_digits() const;

 private:
  int bits_;
  Real eps_;
  Real pi_;
};

inline Real zero_like(const Real& t) { return Real(t.precision()); }
inline Real one_like(const Real& t) { return Real(1.0, t.precision()); }
inline Complex zero_like(const Complex& t) { return Complex(t.precision()); }
inline Complex one_like(const Complex& t) {
  return Complex(Real(1.0, t.precision()), Real(t.precision()));
}

/// T_n(t) by the three-term recurrence T_k = 2t T_{k-1} - T_{k-2}.
template <class Scalar>
Scalar chebyshev_T(int n, const Scalar& t) {
  if (n < 0) throw DomainError("chebyshev_T: negative degree");
  if (n == 0) return one_like(t);
  Scalar prev = one_like(t);
  Scalar cur = t;
  const Scalar two_t = t * 2.0;
  for (int k = 2; k <= n; ++k) {
    Scalar next = two_t * cur - prev;
    prev = std::move(cur);
    cur = std::move(next);
  }
  return cur;
}

/// U_n(t) for n >= -1 with U_{-1} = 0, U_0 = 1, U_k = 2t U_{k-1} - U_{k-2}.
template <class Scalar>
Scalar chebyshev_U(int n, const Scalar& t) {
  if (n < -1) throw DomainError("chebyshev_U: degree below -1");
  if (n == -1) return zero_like(t);
  Scalar prev = zero_like(t);
  Scalar cur = one_like(t);
  const Scalar two_t = t * 2.0;
  for (int k = 1; k <= n; ++k) {
    Scalar next = two_t * cur - prev;
    prev = std::move(cur);
    cur = std::move(next);
  }
  return cur;
}

/// All of U_{-1}(t), ..., U_{max_degree}(t); entry i holds U_{i-1}.
template <class Scalar>
std::vector<Scalar> chebyshev_U_table(int max_degree, const Scalar& t) {
  if (max_degree < -1) throw DomainError("chebyshev_U_table: degree below -1");
  std::vector<Scalar> u;
  u.reserve(static_cast<std::size_t>(max_degree) + 2);
  u.push_back(zero_like(t));
  if (max_degree >= 0) u.push_back(one_like(t));
  const Scalar two_t = t * 2.0;
  for (int k = 1; k <= max_degree; ++k) {
    const std::size_t i = static_cast<std::size_t>(k) + 1;
    u.push_back(two_t * u[i - 1] - u[i - 2]);
  }
  return u;
}

/// g(x) = 2 - 2cos(x), defined on all of R. Evaluated as 4 sin^2(x/2),
/// which keeps full relative accuracy near x = 0.
Real g(const Real& x);
/// g'(x) = 2 sin(x).
Real g_prime(const Real& x);
/// g''(x) = 2 cos(x).
Real g_second(const Real& x);

/// sin(m*theta) and cos(m*theta) for m = 0..count by repeated rotation.
/// Rounding error grows linearly in m.
struct SinCosTable {
  std::vector<Real> sin;
  std::vector<Real> cos;
};
SinCosTable sin_cos_multiples(const Real& theta, int count);

/// tan(x) and atan(x) that switch to short Taylor series once |x| is tiny;
/// MPFR's general routines do not get cheaper for small arguments.
Real tan_fast(const Real& x);
Real atan_fast(const Real& x);

}  // namespace cyclap
