#include "cyclap/numerics.hpp"

#include <algorithm>
#include <cmath>

namespace cyclap {

PrecisionContext::PrecisionContext(int mantissa_bits)
    : bits_(mantissa_bits), eps_(static_cast<mpfr_prec_t>(std::max(mantissa_bits, 2))),
      pi_(static_cast<mpfr_prec_t>(std::max(mantissa_bits, 2))) {
  if (mantissa_bits < 53) throw DomainError("precision must be at least 53 bits");
  eps_ = 1.0;
  eps_ = ldexp(eps_, 1 - mantissa_bits);
  pi_ = cyclap::pi(prec());
}

int PrecisionContext::decimal_digits() const {
  return static_cast<int>(std::floor(static_cast<double>(bits_) / 3.32));
}

Real g(const Real& x) {
  Real s = sin(ldexp(x, -1));
  s = sqr(s);
  return ldexp(s, 2);
}

Real g_prime(const Real& x) { return ldexp(sin(x), 1); }

Real g_second(const Real& x) { return ldexp(cos(x), 1); }

SinCosTable sin_cos_multiples(const Real& theta, int count) {
  SinCosTable t;
  const auto p = theta.precision();
  t.sin.reserve(static_cast<std::size_t>(count) + 1);
  t.cos.reserve(static_cast<std::size_t>(count) + 1);
  t.sin.emplace_back(p);
  t.cos.emplace_back(1.0, p);
  if (count == 0) return t;
  Real s1(p);
  Real c1(p);
  sin_cos(theta, s1, c1);
  t.sin.push_back(s1);
  t.cos.push_back(c1);
  for (int m = 2; m <= count; ++m) {
    const Real& s = t.sin.back();
    const Real& c = t.cos.back();
    Real sn = s * c1 + c * s1;
    Real cn = c * c1 - s * s1;
    t.sin.push_back(std::move(sn));
    t.cos.push_back(std::move(cn));
  }
  return t;
}

namespace {

// Below this binary exponent the series needs at most bits/48 terms.
// The Maclaurin series needs about p / (2 |exponent|) terms; past
// kSeriesTerms the library's argument reduction is cheaper.
constexpr long kSeriesExponent = -24;
constexpr long kSeriesTerms = 16;

bool use_series(const Real& x) {
  if (x.is_zero()) return false;
  const long e = mpfr_get_exp(x.raw());
  return e <= kSeriesExponent && -2 * e * kSeriesTerms >= static_cast<long>(x.precision());
}

}  // namespace

namespace {

// sum_{k>=0} sign^k x^(2k+1) / c_k, with c_k = (2k+1)! for sin and 2k+1 for
// atan. Term k is about 2^(2k e) below x, so it is formed with that many
// fewer bits.
enum class Series { sin, atan };

Real odd_series(const Real& x, Series kind) {
  const mpfr_prec_t p = x.precision();
  const long e = mpfr_get_exp(x.raw());
  Real sum = x;
  Real x2(p);
  mpfr_sqr(x2.raw(), x.raw(), MPFR_RNDN);
  Real power = x;  // x^(2k+1) / (2k+1)! for sin, x^(2k+1) for atan
  Real term(p);
  for (long k = 1;; ++k) {
    const long drop = -2 * k * e;
    if (drop > p + 2) break;
    const mpfr_prec_t q = std::max<mpfr_prec_t>(p - drop + 8, MPFR_PREC_MIN);
    mpfr_prec_round(power.raw(), q, MPFR_RNDN);
    mpfr_mul(power.raw(), power.raw(), x2.raw(), MPFR_RNDN);
    if (kind == Series::sin) {
      mpfr_div_ui(power.raw(), power.raw(), static_cast<unsigned long>((2 * k) * (2 * k + 1)),
                  MPFR_RNDN);
      mpfr_neg(power.raw(), power.raw(), MPFR_RNDN);
      mpfr_add(sum.raw(), sum.raw(), power.raw(), MPFR_RNDN);
    } else {
      mpfr_neg(power.raw(), power.raw(), MPFR_RNDN);
      mpfr_set_prec(term.raw(), q);
      mpfr_div_ui(term.raw(), power.raw(), static_cast<unsigned long>(2 * k + 1), MPFR_RNDN);
      mpfr_add(sum.raw(), sum.raw(), term.raw(), MPFR_RNDN);
    }
  }
  return sum;
}

}  // namespace

Real tan_fast(const Real& x) {
  if (!use_series(x)) return tan(x);
  // tan = s / sqrt(1 - s^2) with s = sin x; cos > 0 here.
  const Real s = odd_series(x, Series::sin);
  return s / sqrt(1.0 - sqr(s));
}

Real atan_fast(const Real& x) {
  if (!use_series(x)) return atan(x);
  return odd_series(x, Series::atan);
}

}  // namespace cyclap
