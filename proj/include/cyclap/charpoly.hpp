#pragma once

// Characteristic polynomials and closed-form eigenvectors of the
// corner-perturbed tridiagonal Toeplitz matrix A_n and of the weighted
// cycle Laplacian L_{alpha,n}, all through Chebyshev recurrences.

#include "cyclap/numerics.hpp"
#include "cyclap/symbolfns.hpp"

#include <vector>

namespace cyclap {

/// A_n is tridiag(-1, 2, -1) with (1,1) = 2 - delta, (1,n) = -epsilon,
/// (n,1) = -sigma and (n,n) = 2 - tau.
struct CornerPerturbation {
  Complex delta;
  Complex epsilon;
  Complex sigma;
  Complex tau;

  /// The perturbation that turns A_n into L_{alpha,n}.
  static CornerPerturbation laplacian(const AlphaParam& a);
};

/// The cycle of n >= 3 vertices whose edge {1, n} carries weight alpha.
class ProblemInstance {
 public:
  ProblemInstance(AlphaParam alpha, int n);

  const AlphaParam& alpha() const { return alpha_; }
  int n() const { return n_; }

 private:
  AlphaParam alpha_;
  int n_;
};

/// Dense n-by-n complex matrix, row-major, 0-based indices.
class MatrixDense {
 public:
  MatrixDense(int n, mpfr_prec_t bits);

  int size() const { return n_; }
  Complex& at(int row, int col) { return data_[index(row, col)]; }
  const Complex& at(int row, int col) const { return data_[index(row, col)]; }
  bool is_real() const;
  std::vector<Complex> apply(const std::vector<Complex>& v) const;

 private:
  std::size_t index(int row, int col) const;
  int n_;
  std::vector<Complex> data_;
};

MatrixDense build_A(const CornerPerturbation& cp, int n, const PrecisionContext& ctx);
MatrixDense build_L(const ProblemInstance& inst, const PrecisionContext& ctx);

/// L_{alpha,n} v in O(n) without materializing the matrix.
std::vector<Complex> apply_L(const ProblemInstance& inst, const std::vector<Complex>& v);

/// det(lambda I - A_n) = U_n(s) + (delta + tau) U_{n-1}(s)
///   + (delta tau - epsilon sigma) U_{n-2}(s) + (-1)^(n+1) (epsilon + sigma),
/// with s = (lambda - 2)/2.
Complex charpoly_A(const CornerPerturbation& cp, int n, const Complex& lambda,
                   const PrecisionContext& ctx);

/// det(lambda I - L_{alpha,n}); depends on alpha only through Re(alpha).
Complex charpoly_L(const ProblemInstance& inst, const Complex& lambda,
                   const PrecisionContext& ctx);
Real charpoly_L(const ProblemInstance& inst, const Real& lambda, const PrecisionContext& ctx);

/// p_n(t) = (t^2 - 4) U_{n-1}(t/2).
Real factor_p(int n, const Real& t, const PrecisionContext& ctx);
/// q_{alpha,n}(t) = (1 - a) T_n(t/2) + a (t/2) U_{n-1}(t/2), a = Re(alpha).
/// Together: t D(4 - t^2) = 2 (-1)^n p_n(t) q_{alpha,n}(t).
Real factor_q(const ProblemInstance& inst, const Real& t, const PrecisionContext& ctx);

/// Eigenvector of A_n for an eigenvalue lambda.
///
/// Uses the first Chebyshev form and falls back to the second when the first
/// vanishes (max norm <= tol n). At lambda = 0 or 4 the generic forms
/// degenerate; the constant or alternating vector is returned when the
/// corner conditions make it an eigenvector, otherwise EigenvalueAtBoundary
/// is thrown. DegenerateCase is thrown when both forms vanish.
std::vector<Complex> eigvec_A(const CornerPerturbation& cp, int n, const Complex& lambda,
                              const PrecisionContext& ctx);

}  // namespace cyclap
