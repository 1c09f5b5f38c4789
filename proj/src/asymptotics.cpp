#include "cyclap/asymptotics.hpp"

namespace cyclap {

namespace {

// g(x) + g'(x) e/m + (g'(x) e e' + g''(x) e^2/2)/m^2.
Real second_order(const Real& x, const Real& e, const Real& e_prime, int m) {
  const Real gp = g_prime(x);
  const Real first = gp * e / static_cast<double>(m);
  const Real second = (gp * e * e_prime + ldexp(g_second(x) * sqr(e), -1)) /
                      (static_cast<double>(m) * static_cast<double>(m));
  return g(x) + first + second;
}

}  // namespace

const char* order_name(AsymptoticOrder order) {
  switch (order) {
    case AsymptoticOrder::theta_first:
      return "theta_first";
    case AsymptoticOrder::lambda_second:
      return "lambda_second";
    case AsymptoticOrder::lambda_second_alt:
      return "lambda_second_alt";
    case AsymptoticOrder::small_j:
      return "small_j";
  }
  return "unknown";
}

Real theta_first_order(const AlphaParam& a, int n, int j, const PrecisionContext& ctx) {
  require_even_index(n, j);
  const Real d = d_nj(n, j, ctx);
  return d + eta(a, d, ctx) / static_cast<double>(n);
}

Real theta_first_order_bound(const AlphaParam& a, int n, const PrecisionContext& ctx) {
  return ctx.pi() * solver_constants(a, n).K1 / (static_cast<double>(n) * static_cast<double>(n));
}

AsymptoticEstimate lambda_second_order(const AlphaParam& a, int n, int j,
                                       const PrecisionContext& ctx) {
  require_even_index(n, j);
  const Real d = d_nj(n, j, ctx);
  const EtaValues ev = eta_with_prime(a, d, ctx);
  return {second_order(d, ev.value, ev.prime, n), AsymptoticOrder::lambda_second, 3};
}

AsymptoticEstimate lambda_second_order_alt(const AlphaParam& a, int n, int j,
                                           const PrecisionContext& ctx) {
  require_even_index(n, j);
  Real x = ctx.pi();
  x.mul_long(j);
  x.div_long(n + 1);
  const Real e = eta_tilde(a, x, ctx);
  const Real e_prime = eta_prime(a, x, ctx) + 1.0;
  return {second_order(x, e, e_prime, n + 1), AsymptoticOrder::lambda_second_alt, 3};
}

AsymptoticEstimate lambda_small_j(const AlphaParam& a, int n, int j, const PrecisionContext& ctx) {
  require_even_index(n, j);
  const Real& al = a.re();
  const double nn = static_cast<double>(n);
  const Real jp2 = sqr(ctx.pi() * static_cast<double>(j));
  const Real lead = jp2 / (nn * nn);
  const Real corr = ldexp(jp2 * (1.0 - al), 1) / (al * nn * nn * nn);
  return {lead - corr, AsymptoticOrder::small_j, 4};
}

}  // namespace cyclap
