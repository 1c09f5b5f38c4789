#include "cyclap/solvers.hpp"

#include <algorithm>
#include <cmath>
#include <initializer_list>
#include <limits>

namespace cyclap {

namespace {

// Extra bits carried internally by the incremental bisection and
// fixed-point kernels to absorb accumulated rounding.
constexpr int kGuardBits = 32;

Real rounded(const Real& x, mpfr_prec_t bits) {
  Real y(bits);
  mpfr_set(y.raw(), x.raw(), MPFR_RNDN);
  return y;
}

long exponent_of(const Real& x) {
  return x.is_zero() ? std::numeric_limits<int>::min() / 2 : mpfr_get_exp(x.raw());
}

Real rounding_floor(const PrecisionContext& ctx) { return ctx.pi() * ctx.eps() * 32.0; }

/// ceil(log2(1/tol)) for tol in (0, 1).
int bits_of_tol(const Real& tol) {
  if (tol <= 0.0) throw DomainError("tolerance must be positive");
  const double lg = -tol.log10_abs() * std::log2(10.0);
  return std::max(1, static_cast<int>(std::ceil(lg)));
}

struct Bracket {
  Real lo;
  Real hi;
};

Bracket bracket_of(int n, int j, const PrecisionContext& ctx) {
  require_even_index(n, j);
  Real hi = (j == n) ? ctx.pi() : d_nj(n, j + 1, ctx);
  return {d_nj(n, j, ctx), std::move(hi)};
}

Real clamp(Real y, const Bracket& b) {
  if (y < b.lo) return b.lo;
  if (y > b.hi) return b.hi;
  return y;
}

void require_in_bracket(const Real& y, const Bracket& b, const PrecisionContext& ctx) {
  const Real slack = ctx.pi() * ctx.eps() * 8.0;
  if (y < b.lo - slack || y > b.hi + slack) {
    throw PreconditionViolated("starting point outside the closed interval I_{n,j}");
  }
}

SolveReport closed_form_report(int n, int j, Method method, const PrecisionContext& ctx) {
  SolveReport r;
  r.root = theta_half(n, j, ctx);
  r.iterations = 0;
  r.method = method;
  r.certified_error = rounding_floor(ctx);
  r.residual = ctx.real(0.0);
  return r;
}

Real abs_h(const AlphaParam& a, int n, int j, const Real& x, const PrecisionContext& ctx) {
  return abs(h_main(a, n, j, x, ctx));
}

}  // namespace

const char* method_name(Method m) {
  switch (m) {
    case Method::newton:
      return "newton";
    case Method::bisection:
      return "bisection";
    case Method::fixed_point:
      return "fixed_point";
  }
  return "unknown";
}

Real theta_half(int n, int j, const PrecisionContext& ctx) {
  Real t = ctx.pi();
  t.mul_long(j);
  t.div_long(n + 1);
  return t;
}

SolveReport newton_convex(const std::function<Real(const Real&)>& f,
                          const std::function<Real(const Real&)>& f_prime, const Real& a,
                          const Real& b, const Real& y0, Curvature curvature, int max_iter,
                          const Real& tol, const PrecisionContext& ctx) {
  if (!(a < b)) throw DomainError("newton_convex needs a < b");
  if (y0 < a || y0 > b) throw PreconditionViolated("y0 outside [a, b]");
  const Real da = f_prime(a);
  const Real db = f_prime(b);
  if (da <= 0.0 || db <= 0.0) throw PreconditionViolated("f' must be positive on [a, b]");
  const Real q = 1.0 - min(da, db) / max(da, db);

  SolveReport r;
  r.method = Method::newton;
  r.converged = false;
  Real y = y0;
  Real fy = f(y);
  const bool good_side = (curvature == Curvature::convex) ? fy.sign() >= 0 : fy.sign() <= 0;
  r.iterates.push_back(y);
  for (int m = 0; m < max_iter; ++m) {
    if (abs(fy) <= tol) {
      r.converged = true;
      break;
    }
    const Real dy = f_prime(y);
    if (dy <= 0.0) throw PreconditionViolated("f' <= 0 at a Newton iterate");
    const Real step = fy / dy;
    y -= step;
    ++r.iterations;
    r.iterates.push_back(y);
    if (y < a || y > b) throw PreconditionViolated("Newton iterate left [a, b]");
    fy = f(y);
    if (abs(step) <= tol) {
      r.converged = true;
      break;
    }
  }
  if (!r.converged && abs(fy) <= tol) r.converged = true;
  const long linear_steps = good_side ? r.iterations : std::max(r.iterations - 1, 0);
  r.certified_error = (b - a) * pow_int(q, linear_steps) +
                      max(abs(a), abs(b)) * ctx.eps() * 32.0;
  r.root = std::move(y);
  r.residual = abs(fy);
  return r;
}

int newton_apriori_steps(const Real& gamma, int n, int p) {
  if (gamma.is_zero()) return 1;
  const double num = p + std::log2(M_PI / (2.0 * n));
  const double den = -std::log2(gamma.to_double());
  const double bound = num / den + 1.0;
  return std::max(1, static_cast<int>(std::floor(bound)) + 1);
}

SolveReport solve_theta_newton(const AlphaParam& a, int n, int j, const PrecisionContext& ctx,
                               const Real& tol) {
  require_even_index(n, j);
  return solve_theta_newton(a, n, j, d_nj(n, j, ctx), ctx, tol);
}

SolveReport solve_theta_newton(const AlphaParam& a, int n, int j, const Real& y0,
                               const PrecisionContext& ctx, const Real& tol) {
  const Bracket br = bracket_of(n, j, ctx);
  require_in_bracket(y0, br, ctx);
  // Re(alpha) = 1/2 needs no special case: h is linear and gamma = 0 caps
  // the loop at the single exact step.

  const SolverConstants sc = solver_constants(a, n);
  // One extra bit: the a-priori count guarantees only 2^(1-p).
  const int cap = newton_apriori_steps(sc.gamma_n, n, bits_of_tol(tol) + 1);
  Real shift = ctx.pi();
  shift.mul_long(j - 1);
  const Real n_tol = tol * static_cast<double>(n);

  SolveReport r;
  r.method = Method::newton;
  Real y = clamp(y0, br);
  r.iterates.push_back(y);
  for (int m = 0; m < cap; ++m) {
    const EtaValues ev = eta_with_prime(a, y, ctx);
    Real h = y * static_cast<double>(n) - shift - ev.value;
    if (abs(h) <= n_tol) break;
    const Real step = h / (static_cast<double>(n) - ev.prime);
    y = clamp(y - step, br);
    ++r.iterations;
    r.iterates.push_back(y);
    if (abs(step) <= tol) break;
  }

  const Real pi_n = ctx.pi() / static_cast<double>(n);
  Real bound = (r.iterations >= 1) ? pi_n * pow_int(sc.gamma_n, r.iterations - 1) : pi_n;
  const Real quad_base = ctx.pi() * sc.K2 / (2.0 * n * static_cast<double>(n));
  if (quad_base < 1.0) {
    // n > sqrt(pi K2 / 2): (pi/n) base^(2^m - 1), exponent capped to stay finite.
    const long expo = (r.iterations >= 40) ? (1L << 40) : (1L << r.iterations) - 1;
    bound = min(bound, pi_n * pow_int(quad_base, expo));
  }
  r.residual = abs_h(a, n, j, y, ctx);
  // h' > n everywhere, so |y - theta| <= |h(y)| / n as well.
  r.certified_error = min(bound, r.residual / static_cast<double>(n)) + rounding_floor(ctx);
  r.root = std::move(y);
  return r;
}

Real newton_fixed_steps(const AlphaParam& a, int n, int j, int steps,
                        const PrecisionContext& ctx) {
  const Bracket br = bracket_of(n, j, ctx);
  if (steps < 0) throw DomainError("step count must be non-negative");
  Real shift = ctx.pi();
  shift.mul_long(j - 1);
  Real y = br.lo;
  for (int m = 0; m < steps; ++m) {
    const EtaValues ev = eta_with_prime(a, y, ctx);
    const Real h = y * static_cast<double>(n) - shift - ev.value;
    y = clamp(y - h / (static_cast<double>(n) - ev.prime), br);
  }
  return y;
}

// Bisection on the sign of h without transcendental calls per step.
//
// With u = (n x - (j-1) pi)/2 in [0, pi/2) and eta(x)/2 = atan(kappa cot(x/2)),
// h(x) > 0 iff tan(u) tan(x/2) > kappa. The left end is an exact dyadic
// offset s (in units of pi/n). Steps are grouped in stages. At the start of
// a stage the tangents B_u, B_x of the left end are evaluated afresh; within
// the stage only the tangents W_u, W_x of the small offset from that base
// are tracked, by the addition formula with tabulated tan of the halving
// step sizes. Expanding the addition formula,
//   tan(u) tan(x/2) - kappa  ~  C0 + C1 W_u + C2 W_x + C3 W_u W_x
// up to a positive factor, where C0 = B_u B_x - kappa is the only term that
// needs full stage precision; the sign test compares C0 exactly against a
// sum evaluated at a few hundred bits. A test that falls inside its rounding
// margin is re-done directly at full precision.
class BisectionTables {
 public:
  BisectionTables(int n, const PrecisionContext& ctx, const Real& tol);

  int n;
  int steps;
  std::vector<Real> tan_u;  // tan(pi 2^-(i+1)), i = 1..steps
  std::vector<Real> tan_x;  // tan((pi/(2n)) 2^-i), i = 1..steps
};

namespace {

constexpr int kStageSteps = 256;
constexpr mpfr_prec_t kStageLead = 96;
// Relative precision of table entries: a stage never resolves more than
// kStageSteps + kStageLead bits below the current step size.
constexpr mpfr_prec_t kTableBits = kStageSteps + kStageLead + 64;

// out[i] = tan(b_i), b_i = b_1 2^-(i-1), from out[1] = tan(b_1). Halving via
// tan(b/2) = t / (1 + sqrt(1 + t^2)) while b is large, then the series
// b + b^3/3 + 2b^5/15, which is exact to kTableBits once b < 2^-110.
void fill_tangents(std::vector<Real>& out, const Real& b1) {
  Real b = b1;
  for (std::size_t i = 2; i < out.size(); ++i) {
    b = ldexp(b, -1);
    if (mpfr_get_exp(b.raw()) > -110) {
      const Real& t = out[i - 1];
      out[i] = t / (1.0 + sqrt(1.0 + sqr(t)));
    } else {
      const Real b2 = sqr(b);
      out[i] = b * (1.0 + b2 * (1.0 / 3.0 + b2 * (2.0 / 15.0)));
    }
  }
}

}  // namespace

BisectionTables::BisectionTables(int n_, const PrecisionContext& ctx, const Real& tol)
    : n(n_), steps(0) {
  if (n_ < 3) throw DomainError("n must be at least 3");
  (void)ctx;
  // Bracket width after i steps is (pi/n) 2^-i.
  const double width_bits = std::log2(M_PI / n_);
  steps = std::max(1, static_cast<int>(std::ceil(bits_of_tol(tol) + width_bits)));
  const mpfr_prec_t bits = kTableBits + 32;
  tan_u.assign(static_cast<std::size_t>(steps) + 1, Real(bits));
  tan_x.assign(static_cast<std::size_t>(steps) + 1, Real(bits));
  Real bu = ldexp(pi(bits), -2);
  tan_u[1] = Real(1.0, bits);
  fill_tangents(tan_u, bu);
  Real bx = pi(bits);
  bx.div_long(4L * n_);
  tan_x[1] = tan(bx);
  fill_tangents(tan_x, bx);
}

std::shared_ptr<const BisectionTables> make_bisection_tables(int n, const PrecisionContext& ctx,
                                                             const Real& tol) {
  return std::make_shared<const BisectionTables>(n, ctx, tol);
}

SolveReport solve_theta_bisection(const AlphaParam& a, int n, int j, const PrecisionContext& ctx,
                                  const Real& tol) {
  require_even_index(n, j);
  const BisectionTables tables(n, ctx, tol);
  return solve_theta_bisection(a, n, j, ctx, tol, tables);
}

namespace {

// tan(u) and tan(x/2) at the point (j - 1 + units_offset) pi / n, where
// units_offset is an exact dyadic in [0, 1).
void tangents_at(int n, int j, const Real& units_offset, mpfr_prec_t bits, Real& tu, Real& tx) {
  const Real p = pi(bits + 16);
  Real u = ldexp(p * units_offset, -1);
  Real units(units_offset.precision() + 32);
  mpfr_set_si(units.raw(), j - 1, MPFR_RNDN);
  units += units_offset;
  Real half_x = p * units;
  half_x.div_long(2L * n);
  mpfr_set_prec(tu.raw(), bits);
  mpfr_set_prec(tx.raw(), bits);
  mpfr_tan(tu.raw(), u.raw(), MPFR_RNDN);
  mpfr_tan(tx.raw(), half_x.raw(), MPFR_RNDN);
}

}  // namespace

SolveReport solve_theta_bisection(const AlphaParam& a, int n, int j, const PrecisionContext& ctx,
                                  const Real& tol, const BisectionTables& tables) {
  require_even_index(n, j);
  if (tables.n != n) throw DomainError("bisection tables built for a different n");
  if (a.is_half()) return closed_form_report(n, j, Method::bisection, ctx);
  (void)tol;

  const mpfr_prec_t full = ctx.prec() + kGuardBits;
  const mpfr_prec_t wbits = kStageSteps + kStageLead + 32;
  const int steps = tables.steps;
  const mpfr_prec_t offset_bits = static_cast<mpfr_prec_t>(steps) + 8;
  Real offset(offset_bits);  // dyadic left end in units of pi/n
  Real c0(64), c1(wbits), c2(wbits), c3(wbits);
  Real un(wbits), ud(wbits), xn(wbits), xd(wbits);
  Real mun(wbits), mud(wbits), mxn(wbits), mxd(wbits);
  Real wu(wbits), wx(wbits), sum(wbits), tmp(wbits), gap(wbits), margin(wbits);
  const Real kappa_full = rounded(a.kappa(), full);
  bool exact = false;
  int done = 0;

  for (int i = 1; i <= steps && !exact; ++i) {
    if ((i - 1) % kStageSteps == 0) {
      const mpfr_prec_t bits =
          std::min(full, static_cast<mpfr_prec_t>(i - 1 + kStageSteps) + kStageLead) + 32;
      Real bu(bits), bx(bits);
      tangents_at(n, j, offset, bits, bu, bx);
      const Real kappa = rounded(a.kappa(), bits);
      c0 = bu * bx - kappa;
      c1 = rounded(bx + kappa * bu, wbits);
      c2 = rounded(bu + kappa * bx, wbits);
      c3 = rounded(1.0 - kappa * bu * bx, wbits);
      mpfr_set_ui(un.raw(), 0, MPFR_RNDN);
      mpfr_set_ui(ud.raw(), 1, MPFR_RNDN);
      mpfr_set_ui(xn.raw(), 0, MPFR_RNDN);
      mpfr_set_ui(xd.raw(), 1, MPFR_RNDN);
    }
    const Real& tu = tables.tan_u[static_cast<std::size_t>(i)];
    const Real& tx = tables.tan_x[static_cast<std::size_t>(i)];
    mpfr_mul(tmp.raw(), ud.raw(), tu.raw(), MPFR_RNDN);
    mpfr_add(mun.raw(), un.raw(), tmp.raw(), MPFR_RNDN);
    mpfr_mul(tmp.raw(), un.raw(), tu.raw(), MPFR_RNDN);
    mpfr_sub(mud.raw(), ud.raw(), tmp.raw(), MPFR_RNDN);
    mpfr_mul(tmp.raw(), xd.raw(), tx.raw(), MPFR_RNDN);
    mpfr_add(mxn.raw(), xn.raw(), tmp.raw(), MPFR_RNDN);
    mpfr_mul(tmp.raw(), xn.raw(), tx.raw(), MPFR_RNDN);
    mpfr_sub(mxd.raw(), xd.raw(), tmp.raw(), MPFR_RNDN);
    mpfr_div(wu.raw(), mun.raw(), mud.raw(), MPFR_RNDN);
    mpfr_div(wx.raw(), mxn.raw(), mxd.raw(), MPFR_RNDN);
    // sum = C1 W_u + C2 W_x + C3 W_u W_x
    mpfr_mul(sum.raw(), c3.raw(), wx.raw(), MPFR_RNDN);
    mpfr_add(sum.raw(), sum.raw(), c1.raw(), MPFR_RNDN);
    mpfr_mul(sum.raw(), sum.raw(), wu.raw(), MPFR_RNDN);
    mpfr_mul(tmp.raw(), c2.raw(), wx.raw(), MPFR_RNDN);
    mpfr_add(sum.raw(), sum.raw(), tmp.raw(), MPFR_RNDN);
    mpfr_add(gap.raw(), c0.raw(), sum.raw(), MPFR_RNDN);
    int sign = mpfr_sgn(gap.raw());
    // sum and the W states carry a few hundred roundings of relative size
    // 2^-wbits; C0 is accurate far below the step size.
    mpfr_abs(margin.raw(), tmp.raw(), MPFR_RNDN);
    mpfr_mul(tmp.raw(), c1.raw(), wu.raw(), MPFR_RNDN);
    mpfr_abs(tmp.raw(), tmp.raw(), MPFR_RNDN);
    mpfr_add(margin.raw(), margin.raw(), tmp.raw(), MPFR_RNDN);
    mpfr_mul_2si(margin.raw(), margin.raw(), 16 - static_cast<long>(wbits), MPFR_RNDN);
    if (mpfr_cmpabs(gap.raw(), margin.raw()) <= 0) {
      Real mid = offset;
      mid += ldexp(Real(1.0, 2), -i);
      Real ftu(full), ftx(full);
      tangents_at(n, j, mid, full, ftu, ftx);
      const Real prod = ftu * ftx;
      const Real g2 = prod - kappa_full;
      sign = g2.sign();
      if (abs(g2) <= ldexp(abs(prod), 8 - static_cast<long>(full))) sign = 0;
    }
    done = i;
    if (sign <= 0) {
      // h(mid) <= 0: the root lies at or right of mid.
      mpfr_swap(un.raw(), mun.raw());
      mpfr_swap(ud.raw(), mud.raw());
      mpfr_swap(xn.raw(), mxn.raw());
      mpfr_swap(xd.raw(), mxd.raw());
      mpfr_add(offset.raw(), offset.raw(), ldexp(Real(1.0, 2), -i).raw(), MPFR_RNDN);
      if (sign == 0) exact = true;
    }
  }

  Real units(offset_bits + 48);
  mpfr_set_si(units.raw(), j - 1, MPFR_RNDN);
  units += offset;
  if (!exact) units += ldexp(Real(1.0, 2), -(done + 1));
  Real root = ctx.pi() * units;
  root.div_long(n);
  root.set_precision(ctx.prec());

  SolveReport r;
  r.method = Method::bisection;
  r.iterations = done;
  r.certified_error = ldexp(ctx.pi() / static_cast<double>(n), -done) + rounding_floor(ctx);
  r.residual = abs_h(a, n, j, root, ctx);
  r.root = std::move(root);
  return r;
}

SolveReport solve_theta_fixed_point(const AlphaParam& a, int n, int j,
                                    const PrecisionContext& ctx, const Real& tol) {
  require_even_index(n, j);
  return solve_theta_fixed_point(a, n, j, d_nj(n, j, ctx), ctx, tol);
}

bool fixed_point_contracts(const AlphaParam& a, int n) {
  const Real k1 = solver_constants(a, n).K1;
  const Real margin = ldexp(Real(1.0, k1.precision()), 16 - static_cast<long>(k1.precision()));
  return k1 < static_cast<double>(n) * (1.0 - margin);
}

// Fixed-point iteration in difference form.
//
// With t_m = tan(x_m/2), e_m = eta(x_m) and step delta_m = x_{m+1} - x_m:
//   t_{m+1} = t_m + tau (1 + t_m^2) / (1 - t_m tau),  tau = tan(delta_m / 2),
//   e_{m+1} = e_m + 2 atan(-kappa (t_{m+1} - t_m) / (kappa^2 + t_m t_{m+1})),
//   delta_{m+1} = (e_{m+1} - e_m) / n.
// The increments only need as many bits as the step is above the target
// accuracy, so late iterations run at low precision.
SolveReport solve_theta_fixed_point(const AlphaParam& a, int n, int j, const Real& x0,
                                    const PrecisionContext& ctx, const Real& tol) {
  const Bracket br = bracket_of(n, j, ctx);
  require_in_bracket(x0, br, ctx);
  const SolverConstants sc = solver_constants(a, n);
  if (!fixed_point_contracts(a, n)) {
    throw ContractionNotGuaranteed("fixed-point iteration needs n > K1(alpha)");
  }
  if (a.is_half()) return closed_form_report(n, j, Method::fixed_point, ctx);

  const mpfr_prec_t full = ctx.prec() + kGuardBits;
  const PrecisionContext hi(static_cast<int>(full));
  const Real pi_n = ctx.pi() / static_cast<double>(n);
  const Real ratio = sc.K1 / static_cast<double>(n);
  // |eta'| is monotone on [0, pi], so its maximum over I_{n,j} is at an end.
  const Real q = max(abs(eta_prime(a, br.lo, ctx)), abs(eta_prime(a, br.hi, ctx))) /
                 static_cast<double>(n);
  const Real post_factor = q / (1.0 - q);
  // Smallest m with (pi/n) (K1/n)^m <= tol.
  const double apriori = std::ceil((bits_of_tol(tol) + std::log2(M_PI / n)) /
                                   -std::log2(ratio.to_double()));
  const int cap = std::max(2, static_cast<int>(apriori) + 1);

  const Real d = d_nj(n, j, hi);
  const Real kappa = rounded(a.kappa(), full);

  // First step directly: x_1 = f(x_0) lies in [lo, hi) so tan(x_1/2) is finite.
  Real x = d + eta(a, rounded(clamp(x0, br), full), hi) / static_cast<double>(n);
  int m = 1;
  Real t = tan(ldexp(x, -1));
  Real e = hi.pi() - ldexp(atan(t / kappa), 1);
  Real delta = d + e / static_cast<double>(n) - x;
  Real post = post_factor * abs(delta);

  while (m < cap) {
    x += delta;
    ++m;
    post = post_factor * abs(delta);
    if (post <= tol || delta.is_zero()) break;
    const long ex = exponent_of(delta);
    const mpfr_prec_t bits =
        std::clamp<mpfr_prec_t>(static_cast<mpfr_prec_t>(full + ex + 48), 64, full);
    const Real tr = rounded(t, bits);
    const Real kr = rounded(kappa, bits);
    const Real tau = tan_fast(ldexp(rounded(delta, bits), -1));
    const Real dt = tau * (1.0 + sqr(tr)) / (1.0 - tr * tau);
    Real t_next = t + dt;
    const Real rho = -(kr * dt) / (sqr(kr) + tr * rounded(t_next, bits));
    const Real de = ldexp(atan_fast(rho), 1);
    e += de;
    t = std::move(t_next);
    delta = de / static_cast<double>(n);
  }

  SolveReport r;
  r.method = Method::fixed_point;
  r.iterations = m;
  r.converged = post <= tol;
  const Real prior = pi_n * pow_int(ratio, m);
  Real root = clamp(rounded(x, ctx.prec()), br);
  r.residual = abs_h(a, n, j, root, ctx);
  r.certified_error =
      min(min(prior, post), r.residual / static_cast<double>(n)) + rounding_floor(ctx);
  r.root = std::move(root);
  return r;
}

}  // namespace cyclap
