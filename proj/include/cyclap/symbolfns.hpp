#pragma once

// The phase function eta_alpha and the scalar symbols built from it.
//
// eta_alpha(x) = 2 atan(kappa cot(x/2)) is a decreasing involution of
// [0, pi] with kappa = Re(alpha) / (1 - Re(alpha)). Everything in the
// eigenvalue path depends on alpha only through kappa; the norm symbols
// nu and xi use the full complex alpha.

#include "cyclap/numerics.hpp"

namespace cyclap {

class AlphaParam {
 public:
  /// Throws DomainError unless 0 < Re(alpha) < 1.
  explicit AlphaParam(Complex alpha);
  explicit AlphaParam(Real alpha);
  /// Parses "p/q", a decimal, or a complex "a+bi" / "a-bi" literal.
  static AlphaParam parse(std::string_view text, const PrecisionContext& ctx);

  const Complex& value() const { return alpha_; }
  const Real& re() const { return alpha_.re; }
  const Real& kappa() const { return kappa_; }
  bool is_real() const { return alpha_.is_real(); }
  /// True iff Re(alpha) is exactly 1/2, where eta(x) = pi - x.
  bool is_half() const { return is_half_; }

 private:
  Complex alpha_;
  Real kappa_;
  bool is_half_;
};

struct SolverConstants {
  Real K1;       // max(kappa, 1/kappa) = sup |eta'|
  Real K2;       // (K1^2 - 1) / 2 >= sup |eta''|
  Real gamma_n;  // linear Newton rate |2a-1| / (a(1-a)n + |2a-1|), a = Re(alpha)
};

SolverConstants solver_constants(const AlphaParam& a, int n);

/// The four algebraically equivalent closed forms of eta.
enum class EtaFormula {
  cot_form,         // 2 atan(kappa cot(x/2))
  tan_form,         // pi - 2 atan(tan(x/2) / kappa)
  asin_kappa_form,  // 2 asin(kappa cos(x/2) / sqrt(sin^2(x/2) + kappa^2 cos^2(x/2)))
  asin_alpha_form,  // 2 asin(sqrt2 a cos(x/2) / sqrt(2a^2 - 2a + 1 + (2a - 1) cos x))
};

/// eta by one specific formula, without branch selection.
Real eta_formula(const AlphaParam& a, const Real& x, EtaFormula formula,
                 const PrecisionContext& ctx);

/// eta(x) for x in [0, pi]: the tan form below pi/2 and the cot form above,
/// so the inner tangent never exceeds 1 in magnitude.
Real eta(const AlphaParam& a, const Real& x, const PrecisionContext& ctx);
/// eta'(x) < 0, with the analytic limits -1/kappa at 0 and -kappa at pi.
Real eta_prime(const AlphaParam& a, const Real& x, const PrecisionContext& ctx);
Real eta_second(const AlphaParam& a, const Real& x, const PrecisionContext& ctx);

struct EtaValues {
  Real value;
  Real prime;
};
/// eta and eta' sharing a single tangent evaluation.
EtaValues eta_with_prime(const AlphaParam& a, const Real& x, const PrecisionContext& ctx);

/// eta(x) + x - pi, evaluated by its arctan closed form so that it vanishes
/// identically when Re(alpha) = 1/2.
Real eta_tilde(const AlphaParam& a, const Real& x, const PrecisionContext& ctx);

/// Checks 3 <= n and j even with 2 <= j <= n; throws DomainError otherwise.
void require_even_index(int n, int j);

/// d_{n,j} = (j-1) pi / n, the left end of the localization interval.
Real d_nj(int n, int j, const PrecisionContext& ctx);

/// f(x) = d_{n,j} + eta(x)/n; its fixed point is theta_j.
Real f_main(const AlphaParam& a, int n, int j, const Real& x, const PrecisionContext& ctx);
/// h(x) = n x - (j-1) pi - eta(x), increasing with a unique zero in I_{n,j}.
Real h_main(const AlphaParam& a, int n, int j, const Real& x, const PrecisionContext& ctx);
/// h'(x) = n - eta'(x) > n.
Real h_main_prime(const AlphaParam& a, int n, int j, const Real& x,
                  const PrecisionContext& ctx);

/// Leading coefficient of the squared eigenvector norm at even index.
Real nu(const AlphaParam& a, const Real& x, const PrecisionContext& ctx);
/// Bounded correction term of the squared eigenvector norm at even index.
Real xi(const AlphaParam& a, const Real& x, const PrecisionContext& ctx);

}  // namespace cyclap
