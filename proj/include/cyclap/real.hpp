#pragma once

// Multiple-precision real and complex scalars on top of MPFR.
//
// Every Real carries its own mantissa width. Binary operations produce a
// result at the wider of the two operand precisions; mixed operations with
// a plain double keep the Real's precision. There is no ambient default
// precision: a Real is always constructed with an explicit width, usually
// through a PrecisionContext.

#include <mpfr.h>

#include <string>
#include <string_view>
#include <utility>

namespace cyclap {

class Real {
 public:
  explicit Real(mpfr_prec_t bits = 53);
  Real(double value, mpfr_prec_t bits);
  static Real from_long(long value, mpfr_prec_t bits);
  /// Parses a decimal (or "p/q" rational) string, rounding to nearest.
  static Real parse(std::string_view text, mpfr_prec_t bits);

  Real(const Real& other);
  Real(Real&& other) noexcept;
  Real& operator=(const Real& other);
  Real& operator=(Real&& other) noexcept;
  Real& operator=(double value);
  ~Real();

  mpfr_prec_t precision() const { return mpfr_get_prec(v_); }
  /// Rounds (or widens) this value in place to a new mantissa width.
  void set_precision(mpfr_prec_t bits);

  mpfr_ptr raw() { return v_; }
  mpfr_srcptr raw() const { return v_; }

  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
  /// Scientific decimal with `digits` significant digits, round-to-nearest-even.
  std::string to_string(int digits) const;
  /// log10(|x|) as a double; -inf for zero. Safe far outside double range.
  double log10_abs() const;

  int sign() const { return mpfr_sgn(v_); }
  bool is_zero() const { return mpfr_zero_p(v_) != 0; }
  bool is_finite() const { return mpfr_number_p(v_) != 0; }

  Real& operator+=(const Real& o);
  Real& operator-=(const Real& o);
  Real& operator*=(const Real& o);
  Real& operator/=(const Real& o);
  Real& operator+=(double o);
  Real& operator-=(double o);
  Real& operator*=(double o);
  Real& operator/=(double o);
  Real& mul_long(long k);
  Real& div_long(long k);

  friend void swap(Real& a, Real& b) noexcept { mpfr_swap(a.v_, b.v_); }

 private:
  void widen_to(mpfr_prec_t bits);
  mpfr_t v_;
};

Real operator-(const Real& a);
Real operator+(const Real& a, const Real& b);
Real operator-(const Real& a, const Real& b);
Real operator*(const Real& a, const Real& b);
Real operator/(const Real& a, const Real& b);
Real operator+(const Real& a, double b);
Real operator-(const Real& a, double b);
Real operator*(const Real& a, double b);
Real operator/(const Real& a, double b);
Real operator+(double a, const Real& b);
Real operator-(double a, const Real& b);
Real operator*(double a, const Real& b);
Real operator/(double a, const Real& b);

int compare(const Real& a, const Real& b);
int compare(const Real& a, double b);
inline bool operator<(const Real& a, const Real& b) { return compare(a, b) < 0; }
inline bool operator>(const Real& a, const Real& b) { return compare(a, b) > 0; }
inline bool operator<=(const Real& a, const Real& b) { return compare(a, b) <= 0; }
inline bool operator>=(const Real& a, const Real& b) { return compare(a, b) >= 0; }
inline bool operator==(const Real& a, const Real& b) { return compare(a, b) == 0; }
inline bool operator!=(const Real& a, const Real& b) { return compare(a, b) != 0; }
inline bool operator<(const Real& a, double b) { return compare(a, b) < 0; }
inline bool operator>(const Real& a, double b) { return compare(a, b) > 0; }
inline bool operator<=(const Real& a, double b) { return compare(a, b) <= 0; }
inline bool operator>=(const Real& a, double b) { return compare(a, b) >= 0; }
inline bool operator==(const Real& a, double b) { return compare(a, b) == 0; }
inline bool operator!=(const Real& a, double b) { return compare(a, b) != 0; }

Real abs(const Real& x);
Real sqr(const Real& x);
Real sqrt(const Real& x);
Real sin(const Real& x);
Real cos(const Real& x);
Real tan(const Real& x);
Real atan(const Real& x);
Real asin(const Real& x);
Real acos(const Real& x);
void sin_cos(const Real& x, Real& s, Real& c);
/// x * 2^e, exact.
Real ldexp(const Real& x, long e);
Real pow_int(const Real& x, long k);
Real max(const Real& a, const Real& b);
Real min(const Real& a, const Real& b);
/// pi rounded to `bits`.
Real pi(mpfr_prec_t bits);
/// 10^k rounded to `bits` (k may be large and negative).
Real pow10(long k, mpfr_prec_t bits);

// Complex numbers with Real parts. std::complex is unspecified for
// non-arithmetic value types, so this is a small explicit value type.
class Complex {
 public:
  explicit Complex(mpfr_prec_t bits = 53) : re(bits), im(bits) {}
  Complex(Real r, Real i) : re(std::move(r)), im(std::move(i)) {}
  explicit Complex(Real r) : re(std::move(r)), im(re.precision()) {}

  Real re;
  Real im;

  mpfr_prec_t precision() const { return re.precision(); }
  bool is_real() const { return im.is_zero(); }

  Complex& operator+=(const Complex& o);
  Complex& operator-=(const Complex& o);
  Complex& operator*=(const Complex& o);
  Complex& operator*=(const Real& o);
  Complex& operator/=(const Complex& o);
};

Complex operator-(const Complex& a);
Complex operator+(const Complex& a, const Complex& b);
Complex operator-(const Complex& a, const Complex& b);
Complex operator*(const Complex& a, const Complex& b);
Complex operator/(const Complex& a, const Complex& b);
Complex operator*(const Complex& a, const Real& b);
Complex operator*(const Real& a, const Complex& b);
Complex operator+(const Complex& a, const Real& b);
Complex operator-(const Complex& a, const Real& b);
Complex operator*(const Complex& a, double b);
Complex operator+(const Complex& a, double b);
Complex operator-(const Complex& a, double b);
Complex operator-(double a, const Complex& b);
Complex conj(const Complex& z);
/// |z|^2
Real norm(const Complex& z);
Real abs(const Complex& z);

}  // namespace cyclap
