#pragma once

// The full eigensystem of L_{alpha,n}: closed-form odd-index eigenvalues,
// solved even-index eigenvalues, explicit eigenvectors and their norms.
//
// full_spectrum runs the even-index solves in parallel with OpenMP;
// full_spectrum_serial is the single-threaded reference with identical
// output.

#include "cyclap/asymptotics.hpp"
#include "cyclap/charpoly.hpp"
#include "cyclap/solvers.hpp"

#include <optional>
#include <vector>

namespace cyclap {

enum class SpectrumMethod { newton, bisection, fixed_point, asymptotic };
const char* spectrum_method_name(SpectrumMethod m);
/// Accepts "newton", "bisect"/"bisection", "fixed-point"/"fixed_point",
/// "asymptotic"; throws DomainError otherwise.
SpectrumMethod parse_spectrum_method(std::string_view text);

enum class Provenance { closed_form, newton, bisection, fixed_point, asymptotic };
const char* provenance_name(Provenance p);

struct SpectrumResult {
  /// Index j - 1 holds lambda_j = g(theta_j), ascending.
  std::vector<Real> lambdas;
  std::vector<Real> thetas;
  std::vector<Provenance> methods;
  /// Present for even j solved by a root finder.
  std::vector<std::optional<SolveReport>> reports;
};

SpectrumResult full_spectrum(const ProblemInstance& inst, SpectrumMethod method,
                             const PrecisionContext& ctx, const Real& tol);
SpectrumResult full_spectrum_serial(const ProblemInstance& inst, SpectrumMethod method,
                                    const PrecisionContext& ctx, const Real& tol);

struct Eigenvector {
  std::vector<Complex> coords;
  Real exact_norm;
  /// sqrt(n nu(theta)) for even j; equal to exact_norm for odd j.
  Real asympt_norm;
};

/// j = 1 gives the ones vector; otherwise
/// v_k = sin(k t) - (1 - conj a) sin((k-1) t) + conj a sin((n-k) t).
Eigenvector eigenvector(const ProblemInstance& inst, int j, const Real& theta,
                        const PrecisionContext& ctx);
std::vector<Complex> eigenvector_coords(const ProblemInstance& inst, int j, const Real& theta,
                                        const PrecisionContext& ctx);

/// Odd j: |1 - alpha| sqrt(n lambda / 2). Even j: the square root of
/// n nu(theta) + sin(eta(theta)) / sin(theta) xi(theta).
Real eigvec_norm_exact(const ProblemInstance& inst, int j, const Real& theta,
                       const PrecisionContext& ctx);
/// sqrt(n nu(theta)) for even j.
Real eigvec_norm_asympt(const ProblemInstance& inst, int j, const Real& theta,
                        const PrecisionContext& ctx);
/// Euclidean norm of the coordinates.
Real euclidean_norm(const std::vector<Complex>& v);

/// ||L v - lambda v||_2 via the structured product.
Real residual(const ProblemInstance& inst, const Real& lambda, const std::vector<Complex>& v,
              const PrecisionContext& ctx);
/// Residuals of all n eigenpairs (coordinates from eigenvector_coords).
std::vector<Real> spectrum_residuals(const ProblemInstance& inst, const SpectrumResult& spec,
                                     const PrecisionContext& ctx);

struct SweepPoint {
  Real alpha;
  Real lambda;
};
/// lambda_{alpha,n,j} for each alpha (ascending, real, in (0, 1)).
std::vector<SweepPoint> alpha_sweep(int n, int j, const std::vector<Real>& alphas,
                                    const PrecisionContext& ctx, const Real& tol);

}  // namespace cyclap
