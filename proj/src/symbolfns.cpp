#include "cyclap/symbolfns.hpp"

#include <algorithm>
#include <cctype>
#include <string>

namespace cyclap {

namespace {

Real kappa_of(const Real& re) { return re / (1.0 - re); }

void require_angle(const Real& x, const PrecisionContext& ctx) {
  // A few ulps of slack so that a rounded pi or j*pi/n is accepted.
  const Real slack = ctx.pi() * ctx.eps() * 8.0;
  if (x < -slack || x > ctx.pi() + slack) {
    throw DomainError("angle outside [0, pi]: " + x.to_string(17));
  }
}

// For x < pi/2 returns tan(x/2) with below_half = true; otherwise returns
// cot(x/2) = tan((pi - x)/2). Either way the result lies in [0, 1].
struct HalfTangent {
  Real value;
  bool below_half;
};

HalfTangent half_tangent(const Real& x, const PrecisionContext& ctx) {
  const Real half_pi = ldexp(ctx.pi(), -1);
  if (x < half_pi) return {tan(ldexp(x, -1)), true};
  return {tan(ldexp(ctx.pi() - x, -1)), false};
}

}  // namespace

AlphaParam::AlphaParam(Complex alpha)
    : alpha_(std::move(alpha)), kappa_(alpha_.precision()), is_half_(false) {
  const Real& re = alpha_.re;
  if (!re.is_finite() || !alpha_.im.is_finite() || re <= 0.0 || re >= 1.0) {
    throw DomainError("alpha must satisfy 0 < Re(alpha) < 1");
  }
  kappa_ = kappa_of(re);
  is_half_ = (re == 0.5);
}

AlphaParam::AlphaParam(Real alpha) : AlphaParam(Complex(std::move(alpha))) {}

AlphaParam AlphaParam::parse(std::string_view text, const PrecisionContext& ctx) {
  std::string s(text);
  s.erase(std::remove_if(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); }),
          s.end());
  if (s.empty()) throw DomainError("empty alpha");
  if (s.back() != 'i') return AlphaParam(ctx.parse(s));
  s.pop_back();
  // Split at the last sign that is not leading and not an exponent sign.
  std::size_t split = std::string::npos;
  for (std::size_t i = s.size(); i-- > 1;) {
    if ((s[i] == '+' || s[i] == '-') && s[i - 1] != 'e' && s[i - 1] != 'E') {
      split = i;
      break;
    }
  }
  if (split == std::string::npos) throw DomainError("complex alpha needs a real part: " + s);
  Real re = ctx.parse(s.substr(0, split));
  std::string im_text = s.substr(split);
  if (im_text == "+" || im_text == "-") im_text += "1";
  if (im_text.front() == '+') im_text.erase(0, 1);
  Real im = ctx.parse(im_text);
  return AlphaParam(Complex(std::move(re), std::move(im)));
}

SolverConstants solver_constants(const AlphaParam& a, int n) {
  const Real& k = a.kappa();
  Real k1 = max(k, 1.0 / k);
  Real k2 = ldexp(sqr(k1) - 1.0, -1);
  const Real& re = a.re();
  Real skew = abs(ldexp(re, 1) - 1.0);
  Real gamma = skew / (re * (1.0 - re) * static_cast<double>(n) + skew);
  if (a.is_half()) {
    k1 = 1.0;
    k2 = 0.0;
    gamma = 0.0;
  }
  return {std::move(k1), std::move(k2), std::move(gamma)};
}

Real eta_formula(const AlphaParam& a, const Real& x, EtaFormula formula,
                 const PrecisionContext& ctx) {
  const Real& k = a.kappa();
  const Real half = ldexp(x, -1);
  switch (formula) {
    case EtaFormula::cot_form: {
      Real s(ctx.prec()), c(ctx.prec());
      sin_cos(half, s, c);
      return ldexp(atan(k * c / s), 1);
    }
    case EtaFormula::tan_form:
      return ctx.pi() - ldexp(atan(tan(half) / k), 1);
    case EtaFormula::asin_kappa_form: {
      Real s(ctx.prec()), c(ctx.prec());
      sin_cos(half, s, c);
      const Real kc = k * c;
      return ldexp(asin(kc / sqrt(sqr(s) + sqr(kc))), 1);
    }
    case EtaFormula::asin_alpha_form: {
      const Real& al = a.re();
      const Real two_a = ldexp(al, 1);
      const Real num = sqrt(ctx.real(2.0)) * al * cos(half);
      const Real den = sqrt(two_a * al - two_a + 1.0 + (two_a - 1.0) * cos(x));
      return ldexp(asin(num / den), 1);
    }
  }
  throw DomainError("unknown eta formula");
}

Real eta(const AlphaParam& a, const Real& x, const PrecisionContext& ctx) {
  return eta_with_prime(a, x, ctx).value;
}

EtaValues eta_with_prime(const AlphaParam& a, const Real& x, const PrecisionContext& ctx) {
  require_angle(x, ctx);
  if (a.is_half()) return {ctx.pi() - x, ctx.real(-1.0)};
  const Real& k = a.kappa();
  const HalfTangent ht = half_tangent(x, ctx);
  const Real t2 = sqr(ht.value);
  if (ht.below_half) {
    // t = tan(x/2): eta = pi - 2 atan(t/kappa), eta' = -kappa(1+t^2)/(kappa^2+t^2).
    Real value = ctx.pi() - ldexp(atan(ht.value / k), 1);
    Real prime = -(k * (1.0 + t2)) / (sqr(k) + t2);
    return {std::move(value), std::move(prime)};
  }
  // c = cot(x/2): eta = 2 atan(kappa c), eta' = -kappa(1+c^2)/(1+kappa^2 c^2).
  Real value = ldexp(atan(k * ht.value), 1);
  Real prime = -(k * (1.0 + t2)) / (1.0 + sqr(k) * t2);
  return {std::move(value), std::move(prime)};
}

Real eta_prime(const AlphaParam& a, const Real& x, const PrecisionContext& ctx) {
  require_angle(x, ctx);
  if (a.is_half()) return ctx.real(-1.0);
  const Real& k = a.kappa();
  const HalfTangent ht = half_tangent(x, ctx);
  const Real t2 = sqr(ht.value);
  if (ht.below_half) return -(k * (1.0 + t2)) / (sqr(k) + t2);
  return -(k * (1.0 + t2)) / (1.0 + sqr(k) * t2);
}

Real eta_second(const AlphaParam& a, const Real& x, const PrecisionContext& ctx) {
  require_angle(x, ctx);
  if (a.is_half()) return ctx.real(0.0);
  const Real& k = a.kappa();
  const Real k2m1 = sqr(k) - 1.0;
  const HalfTangent ht = half_tangent(x, ctx);
  const Real t2 = sqr(ht.value);
  if (ht.below_half) {
    const Real prime = -(k * (1.0 + t2)) / (sqr(k) + t2);
    return k2m1 * ht.value / (sqr(k) + t2) * prime;
  }
  const Real prime = -(k * (1.0 + t2)) / (1.0 + sqr(k) * t2);
  return k2m1 * ht.value / (1.0 + sqr(k) * t2) * prime;
}

Real eta_tilde(const AlphaParam& a, const Real& x, const PrecisionContext& ctx) {
  require_angle(x, ctx);
  if (a.is_half()) return ctx.real(0.0);
  const Real& k = a.kappa();
  const HalfTangent ht = half_tangent(x, ctx);
  const Real t2 = sqr(ht.value);
  // 2 atan((kappa-1) c / (1 + kappa c^2)), rewritten in t = 1/c below pi/2.
  if (ht.below_half) return ldexp(atan((k - 1.0) * ht.value / (t2 + k)), 1);
  return ldexp(atan((k - 1.0) * ht.value / (1.0 + k * t2)), 1);
}

void require_even_index(int n, int j) {
  if (n < 3) throw DomainError("n must be at least 3");
  if (j < 2 || j > n || j % 2 != 0) {
    throw DomainError("j must be even with 2 <= j <= n, got " + std::to_string(j));
  }
}

Real d_nj(int n, int j, const PrecisionContext& ctx) {
  Real d = ctx.pi();
  d.mul_long(j - 1);
  d.div_long(n);
  return d;
}

Real f_main(const AlphaParam& a, int n, int j, const Real& x, const PrecisionContext& ctx) {
  require_even_index(n, j);
  Real e = eta(a, x, ctx);
  e.div_long(n);
  return d_nj(n, j, ctx) + e;
}

Real h_main(const AlphaParam& a, int n, int j, const Real& x, const PrecisionContext& ctx) {
  require_even_index(n, j);
  Real nx = x;
  nx.mul_long(n);
  Real shift = ctx.pi();
  shift.mul_long(j - 1);
  return nx - shift - eta(a, x, ctx);
}

Real h_main_prime(const AlphaParam& a, int n, int j, const Real& x,
                  const PrecisionContext& ctx) {
  require_even_index(n, j);
  return static_cast<double>(n) - eta_prime(a, x, ctx);
}

Real nu(const AlphaParam& a, const Real& x, const PrecisionContext& ctx) {
  const Real& re = a.re();
  const Real mod2 = norm(a.value());
  const Real e = eta(a, x, ctx);
  Real out = ldexp((1.0 - re) * g(x), -1);
  out -= ldexp(re * g(e), -1);
  out += ldexp((re - mod2) * g(x - e), -1);
  out += ldexp(mod2, 1);
  return out;
}

Real xi(const AlphaParam& a, const Real& x, const PrecisionContext& ctx) {
  const Real& re = a.re();
  const Real mod2 = norm(a.value());
  const Real one_minus_mod2 = norm(1.0 - a.value());
  const Real e = eta(a, x, ctx);
  const Real gx = g(x);
  const Real ge = g(e);
  const Real cx = cos(x);
  Real out = ldexp(one_minus_mod2 * gx * cos(e), -1);
  out += ldexp(mod2 * ge * cx, -1);
  out += ldexp((re - mod2) * (gx + g(x + e) - ge), -1);
  out -= ldexp(mod2 * cx, 1);
  return out;
}

}  // namespace cyclap
