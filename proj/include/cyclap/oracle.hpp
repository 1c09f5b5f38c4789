#pragma once

// Independent reference computations used only for validation: a dense
// Jacobi eigensolver, a pivoted determinant, and bisection on the
// characteristic polynomial. Nothing here touches the eta-based main
// equation or its solvers.

#include "cyclap/charpoly.hpp"

#include <vector>

namespace cyclap {

enum class OracleBackend { jacobi_rotations, charpoly_bisection };

struct OracleSpectrum {
  std::vector<Real> lambdas;  // ascending
  OracleBackend backend;
  Real achieved_tol;
};

/// Cyclic Jacobi rotations on a real symmetric matrix until the
/// off-diagonal Frobenius norm is at most tol * ||M||_F.
/// Throws NotSymmetric if M is complex or |m_ij - m_ji| > tol * ||M||_F,
/// NoConvergence after the sweep cap.
OracleSpectrum dense_sym_eig(const MatrixDense& m, const PrecisionContext& ctx,
                             const Real& tol);

/// Determinant by Gaussian elimination with partial pivoting.
Complex dense_det(const MatrixDense& m, const PrecisionContext& ctx);

/// All n eigenvalues of L_{alpha,n} for real alpha from sign changes of the
/// characteristic polynomial on the mesh g(k pi/n), refined by bisection to
/// an absolute width of tol. Throws DomainError for complex alpha.
OracleSpectrum charpoly_root_isolate(const ProblemInstance& inst, const PrecisionContext& ctx,
                                     const Real& tol);

}  // namespace cyclap
