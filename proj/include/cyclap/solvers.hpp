#pragma once

// Root finders: a generic Newton engine for monotone convex or concave
// functions, and three solvers for the main equation h_{alpha,n,j}(x) = 0
// on I_{n,j} = ((j-1) pi/n, j pi/n) for even j.

#include "cyclap/symbolfns.hpp"

#include <functional>
#include <memory>
#include <optional>
#include <vector>

namespace cyclap {

enum class Method { newton, bisection, fixed_point };
const char* method_name(Method m);

struct SolveReport {
  Real root;
  int iterations = 0;
  Method method = Method::newton;
  /// Bound on |root - exact root| from the method's rate formula, plus a
  /// rounding allowance of 32 pi eps.
  Real certified_error;
  /// |h(root)| for the main-equation solvers, |f(root)| for newton_convex.
  Real residual;
  /// False when the iteration cap was reached before the tolerance.
  bool converged = true;
  /// Newton iterates y_0, y_1, ..., in order (Newton only).
  std::vector<Real> iterates;
};

enum class Curvature { convex, concave };

/// Newton's method y <- y - f(y)/f'(y) for f increasing on [a, b] with a
/// sign change. For convex f the iterates decrease to the root from any
/// y0 >= root; for concave f they increase from any y0 <= root. A start on
/// the other side is accepted when the first step stays in [a, b].
///
/// Stops when |f(y)| <= tol or |step| <= tol. certified_error is the linear
/// bound (b - a) q^(m-1) with q = 1 - min f'/max f' at the endpoints.
/// Throws PreconditionViolated if f'(y) <= 0 or an iterate leaves [a, b];
/// returns converged = false at max_iter.
SolveReport newton_convex(const std::function<Real(const Real&)>& f,
                          const std::function<Real(const Real&)>& f_prime, const Real& a,
                          const Real& b, const Real& y0, Curvature curvature, int max_iter,
                          const Real& tol, const PrecisionContext& ctx);

/// Smallest integer m with m > (p + log2(pi/(2n))) / log2(1/gamma) + 1.
int newton_apriori_steps(const Real& gamma, int n, int p);

/// Newton on h from y0 (default d_{n,j}). Stops when |step| <= tol or
/// |h| <= n tol, and never runs longer than the a-priori step count.
SolveReport solve_theta_newton(const AlphaParam& a, int n, int j, const PrecisionContext& ctx,
                               const Real& tol);
SolveReport solve_theta_newton(const AlphaParam& a, int n, int j, const Real& y0,
                               const PrecisionContext& ctx, const Real& tol);

/// Exactly `steps` Newton iterations on h from d_{n,j}, without a stopping
/// test; steps = 2 gives the two-step approximation with error O(1/n^7).
Real newton_fixed_steps(const AlphaParam& a, int n, int j, int steps,
                        const PrecisionContext& ctx);

/// Precomputed tangent steps shared by all bisection solves with the same
/// n and precision.
class BisectionTables;
std::shared_ptr<const BisectionTables> make_bisection_tables(int n, const PrecisionContext& ctx,
                                                             const Real& tol);

/// Bisection on the sign of h until the bracket is at most tol wide.
SolveReport solve_theta_bisection(const AlphaParam& a, int n, int j, const PrecisionContext& ctx,
                                  const Real& tol);
SolveReport solve_theta_bisection(const AlphaParam& a, int n, int j, const PrecisionContext& ctx,
                                  const Real& tol, const BisectionTables& tables);

/// n > K1(alpha), with K1 within a relative 2^-(p-16) of n counted as equal
/// so that rounding cannot admit a contraction factor of exactly 1.
bool fixed_point_contracts(const AlphaParam& a, int n);

/// Iterates x <- d_{n,j} + eta(x)/n from x0 (default d_{n,j}).
/// Throws ContractionNotGuaranteed unless n > K1(alpha).
SolveReport solve_theta_fixed_point(const AlphaParam& a, int n, int j,
                                    const PrecisionContext& ctx, const Real& tol);
SolveReport solve_theta_fixed_point(const AlphaParam& a, int n, int j, const Real& x0,
                                    const PrecisionContext& ctx, const Real& tol);

/// Closed-form root j pi/(n+1) for Re(alpha) = 1/2.
Real theta_half(int n, int j, const PrecisionContext& ctx);

}  // namespace cyclap
