#include "cyclap/real.hpp"

#include "cyclap/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace cyclap {

namespace {

constexpr mpfr_rnd_t kRnd = MPFR_RNDN;

mpfr_prec_t wider(const Real& a, const Real& b) {
  return std::max(a.precision(), b.precision());
}

// MPFR has no move-only API; a moved-from Real keeps a tiny valid value so
// destruction and reassignment stay well defined.
constexpr mpfr_prec_t kMovedFromBits = MPFR_PREC_MIN;

std::string trim(std::string_view s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && (s[b] == ' ' || s[b] == '\t')) ++b;
  while (e > b && (s[e - 1] == ' ' || s[e - 1] == '\t')) --e;
  return std::string(s.substr(b, e - b));
}

}  // namespace

Real::Real(mpfr_prec_t bits) {
  mpfr_init2(v_, bits);
  mpfr_set_zero(v_, 1);
}

Real::Real(double value, mpfr_prec_t bits) {
  mpfr_init2(v_, bits);
  mpfr_set_d(v_, value, kRnd);
}

Real Real::from_long(long value, mpfr_prec_t bits) {
  Real r(bits);
  mpfr_set_si(r.v_, value, kRnd);
  return r;
}

Real Real::parse(std::string_view text, mpfr_prec_t bits) {
  const std::string s = trim(text);
  if (s.empty()) throw DomainError("empty number");
  const auto slash = s.find('/');
  auto read = [bits](const std::string& part) {
    // Extra guard bits so that a quotient p/q is rounded only once in effect.
    Real r(bits + 64);
    const std::string t = trim(part);
    char* end = nullptr;
    mpfr_strtofr(r.raw(), t.c_str(), &end, 10, kRnd);
    if (t.empty() || end == nullptr || *end != '\0' || end == t.c_str()) {
      throw DomainError("bad number: " + t);
    }
    return r;
  };
  if (slash == std::string::npos) {
    Real r(bits);
    char* end = nullptr;
    mpfr_strtofr(r.v_, s.c_str(), &end, 10, kRnd);
    if (end == nullptr || *end != '\0' || end == s.c_str()) {
      throw DomainError("bad number: " + s);
    }
    return r;
  }
  Real num = read(s.substr(0, slash));
  Real den = read(s.substr(slash + 1));
  if (den.is_zero()) throw DomainError("zero denominator: " + s);
  Real r(bits);
  mpfr_div(r.v_, num.v_, den.v_, kRnd);
  return r;
}

Real::Real(const Real& other) {
  mpfr_init2(v_, other.precision());
  mpfr_set(v_, other.v_, kRnd);
}

Real::Real(Real&& other) noexcept {
  mpfr_init2(v_, kMovedFromBits);
  mpfr_swap(v_, other.v_);
}

Real& Real::operator=(const Real& other) {
  if (this != &other) {
    mpfr_set_prec(v_, other.precision());
    mpfr_set(v_, other.v_, kRnd);
  }
  return *this;
}

Real& Real::operator=(Real&& other) noexcept {
  mpfr_swap(v_, other.v_);
  return *this;
}

Real& Real::operator=(double value) {
  mpfr_set_d(v_, value, kRnd);
  return *this;
}

Real::~Real() { mpfr_clear(v_); }

void Real::set_precision(mpfr_prec_t bits) { mpfr_prec_round(v_, bits, kRnd); }

void Real::widen_to(mpfr_prec_t bits) {
  if (bits > precision()) mpfr_prec_round(v_, bits, kRnd);
}

std::string Real::to_string(int digits) const {
  if (mpfr_nan_p(v_)) return "nan";
  if (mpfr_inf_p(v_)) return mpfr_sgn(v_) > 0 ? "inf" : "-inf";
  if (mpfr_zero_p(v_)) return "0";
  mpfr_exp_t exp10 = 0;
  char* raw = mpfr_get_str(nullptr, &exp10, 10, static_cast<std::size_t>(std::max(digits, 1)),
                           v_, kRnd);
  std::string mant(raw);
  mpfr_free_str(raw);
  std::string out;
  std::size_t i = 0;
  if (mant[0] == '-') {
    out.push_back('-');
    i = 1;
  }
  out.push_back(mant[i]);
  if (i + 1 < mant.size()) {
    out.push_back('.');
    out.append(mant, i + 1, std::string::npos);
  }
  out.push_back('e');
  out.append(std::to_string(static_cast<long>(exp10) - 1));
  return out;
}

double Real::log10_abs() const {
  if (mpfr_zero_p(v_)) return -std::numeric_limits<double>::infinity();
  long e = 0;
  const double m = mpfr_get_d_2exp(&e, v_, kRnd);
  return std::log10(std::fabs(m)) + static_cast<double>(e) * std::log10(2.0);
}

Real& Real::operator+=(const Real& o) {
  widen_to(o.precision());
  mpfr_add(v_, v_, o.v_, kRnd);
  return *this;
}
Real& Real::operator-=(const Real& o) {
  widen_to(o.precision());
  mpfr_sub(v_, v_, o.v_, kRnd);
  return *this;
}
Real& Real::operator*=(const Real& o) {
  widen_to(o.precision());
  mpfr_mul(v_, v_, o.v_, kRnd);
  return *this;
}
Real& Real::operator/=(const Real& o) {
  widen_to(o.precision());
  mpfr_div(v_, v_, o.v_, kRnd);
  return *this;
}
Real& Real::operator+=(double o) {
  mpfr_add_d(v_, v_, o, kRnd);
  return *this;
}
Real& Real::operator-=(double o) {
  mpfr_sub_d(v_, v_, o, kRnd);
  return *this;
}
Real& Real::operator*=(double o) {
  mpfr_mul_d(v_, v_, o, kRnd);
  return *this;
}
Real& Real::operator/=(double o) {
  mpfr_div_d(v_, v_, o, kRnd);
  return *this;
}
Real& Real::mul_long(long k) {
  mpfr_mul_si(v_, v_, k, kRnd);
  return *this;
}
Real& Real::div_long(long k) {
  mpfr_div_si(v_, v_, k, kRnd);
  return *this;
}

Real operator-(const Real& a) {
  Real r(a.precision());
  mpfr_neg(r.raw(), a.raw(), kRnd);
  return r;
}

#define CYCLAP_REAL_BINOP(op, fn)                        \
  Real operator op(const Real& a, const Real& b) {       \
    Real r(wider(a, b));                                 \
    fn(r.raw(), a.raw(), b.raw(), kRnd);                 \
    return r;                                            \
  }
CYCLAP_REAL_BINOP(+, mpfr_add)
CYCLAP_REAL_BINOP(-, mpfr_sub)
CYCLAP_REAL_BINOP(*, mpfr_mul)
CYCLAP_REAL_BINOP(/, mpfr_div)
#undef CYCLAP_REAL_BINOP

Real operator+(const Real& a, double b) {
  Real r(a.precision());
  mpfr_add_d(r.raw(), a.raw(), b, kRnd);
  return r;
}
Real operator-(const Real& a, double b) {
  Real r(a.precision());
  mpfr_sub_d(r.raw(), a.raw(), b, kRnd);
  return r;
}
Real operator*(const Real& a, double b) {
  Real r(a.precision());
  mpfr_mul_d(r.raw(), a.raw(), b, kRnd);
  return r;
}
Real operator/(const Real& a, double b) {
  Real r(a.precision());
  mpfr_div_d(r.raw(), a.raw(), b, kRnd);
  return r;
}
Real operator+(double a, const Real& b) { return b + a; }
Real operator-(double a, const Real& b) {
  Real r(b.precision());
  mpfr_d_sub(r.raw(), a, b.raw(), kRnd);
  return r;
}
Real operator*(double a, const Real& b) { return b * a; }
Real operator/(double a, const Real& b) {
  Real r(b.precision());
  mpfr_d_div(r.raw(), a, b.raw(), kRnd);
  return r;
}

int compare(const Real& a, const Real& b) { return mpfr_cmp(a.raw(), b.raw()); }
int compare(const Real& a, double b) { return mpfr_cmp_d(a.raw(), b); }

#define CYCLAP_REAL_UNARY(name, fn)            \
  Real name(const Real& x) {                   \
    Real r(x.precision());                     \
    fn(r.raw(), x.raw(), kRnd);                \
    return r;                                  \
  }
CYCLAP_REAL_UNARY(abs, mpfr_abs)
CYCLAP_REAL_UNARY(sqr, mpfr_sqr)
CYCLAP_REAL_UNARY(sqrt, mpfr_sqrt)
CYCLAP_REAL_UNARY(sin, mpfr_sin)
CYCLAP_REAL_UNARY(cos, mpfr_cos)
CYCLAP_REAL_UNARY(tan, mpfr_tan)
CYCLAP_REAL_UNARY(atan, mpfr_atan)
CYCLAP_REAL_UNARY(asin, mpfr_asin)
CYCLAP_REAL_UNARY(acos, mpfr_acos)
#undef CYCLAP_REAL_UNARY

void sin_cos(const Real& x, Real& s, Real& c) {
  s.set_precision(x.precision());
  c.set_precision(x.precision());
  mpfr_sin_cos(s.raw(), c.raw(), x.raw(), kRnd);
}

Real ldexp(const Real& x, long e) {
  Real r(x.precision());
  mpfr_mul_2si(r.raw(), x.raw(), e, kRnd);
  return r;
}

Real pow_int(const Real& x, long k) {
  Real r(x.precision());
  mpfr_pow_si(r.raw(), x.raw(), k, kRnd);
  return r;
}

Real max(const Real& a, const Real& b) { return a < b ? b : a; }
Real min(const Real& a, const Real& b) { return b < a ? b : a; }

Real pi(mpfr_prec_t bits) {
  Real r(bits);
  mpfr_const_pi(r.raw(), kRnd);
  return r;
}

Real pow10(long k, mpfr_prec_t bits) {
  Real r(bits);
  mpfr_ui_pow_ui(r.raw(), 10, static_cast<unsigned long>(k < 0 ? -k : k), kRnd);
  if (k < 0) mpfr_ui_div(r.raw(), 1, r.raw(), kRnd);
  return r;
}

// ---- Complex ---------------------------------------------------------------

Complex& Complex::operator+=(const Complex& o) {
  re += o.re;
  im += o.im;
  return *this;
}
Complex& Complex::operator-=(const Complex& o) {
  re -= o.re;
  im -= o.im;
  return *this;
}
Complex& Complex::operator*=(const Complex& o) {
  if (im.is_zero() && o.im.is_zero()) {
    re *= o.re;
    im *= o.re;
    return *this;
  }
  Real r = re * o.re - im * o.im;
  Real i = re * o.im + im * o.re;
  re = std::move(r);
  im = std::move(i);
  return *this;
}
Complex& Complex::operator*=(const Real& o) {
  re *= o;
  im *= o;
  return *this;
}
Complex& Complex::operator/=(const Complex& o) {
  if (o.im.is_zero()) {
    re /= o.re;
    im /= o.re;
    return *this;
  }
  const Real d = norm(o);
  Real r = (re * o.re + im * o.im) / d;
  Real i = (im * o.re - re * o.im) / d;
  re = std::move(r);
  im = std::move(i);
  return *this;
}

Complex operator-(const Complex& a) { return Complex(-a.re, -a.im); }
Complex operator+(const Complex& a, const Complex& b) { return Complex(a.re + b.re, a.im + b.im); }
Complex operator-(const Complex& a, const Complex& b) { return Complex(a.re - b.re, a.im - b.im); }
Complex operator*(const Complex& a, const Complex& b) {
  Complex r = a;
  r *= b;
  return r;
}
Complex operator/(const Complex& a, const Complex& b) {
  Complex r = a;
  r /= b;
  return r;
}
Complex operator*(const Complex& a, const Real& b) { return Complex(a.re * b, a.im * b); }
Complex operator*(const Real& a, const Complex& b) { return b * a; }
Complex operator+(const Complex& a, const Real& b) { return Complex(a.re + b, a.im); }
Complex operator-(const Complex& a, const Real& b) { return Complex(a.re - b, a.im); }
Complex operator*(const Complex& a, double b) { return Complex(a.re * b, a.im * b); }
Complex operator+(const Complex& a, double b) { return Complex(a.re + b, a.im); }
Complex operator-(const Complex& a, double b) { return Complex(a.re - b, a.im); }
Complex operator-(double a, const Complex& b) { return Complex(a - b.re, -b.im); }
Complex conj(const Complex& z) { return Complex(z.re, -z.im); }
Real norm(const Complex& z) { return sqr(z.re) + sqr(z.im); }
Real abs(const Complex& z) {
  Real r(z.precision());
  mpfr_hypot(r.raw(), z.re.raw(), z.im.raw(), kRnd);
  return r;
}

}  // namespace cyclap
