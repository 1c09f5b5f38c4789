#include "cyclap/oracle.hpp"

#include <algorithm>
#include <string>

namespace cyclap {

namespace {

constexpr int kMaxSweeps = 100;

}  // namespace

OracleSpectrum dense_sym_eig(const MatrixDense& m, const PrecisionContext& ctx,
                             const Real& tol) {
  const int n = m.size();
  if (!m.is_real()) throw NotSymmetric("matrix has complex entries");
  std::vector<Real> a;
  a.reserve(static_cast<std::size_t>(n) * static_cast<std::size_t>(n));
  Real frob(ctx.prec());
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < n; ++c) {
      a.push_back(m.at(r, c).re);
      frob += sqr(m.at(r, c).re);
    }
  }
  frob = sqrt(frob);
  const Real threshold = tol * frob;
  const auto A = [&](int r, int c) -> Real& {
    return a[static_cast<std::size_t>(r) * static_cast<std::size_t>(n) +
             static_cast<std::size_t>(c)];
  };
  for (int r = 0; r < n; ++r) {
    for (int c = r + 1; c < n; ++c) {
      if (abs(A(r, c) - A(c, r)) > threshold) {
        throw NotSymmetric("asymmetry at (" + std::to_string(r) + ", " + std::to_string(c) + ")");
      }
    }
  }

  const auto off_norm = [&] {
    Real s(ctx.prec());
    for (int r = 0; r < n; ++r) {
      for (int c = r + 1; c < n; ++c) s += sqr(A(r, c));
    }
    return sqrt(ldexp(s, 1));
  };

  bool converged = false;
  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    if (off_norm() <= threshold) {
      converged = true;
      break;
    }
    for (int p = 0; p < n - 1; ++p) {
      for (int q = p + 1; q < n; ++q) {
        const Real apq = A(p, q);
        if (apq.is_zero()) continue;
        // Rotation annihilating (p, q), smaller-angle choice.
        const Real theta = (A(q, q) - A(p, p)) / ldexp(apq, 1);
        Real t = 1.0 / (abs(theta) + sqrt(sqr(theta) + 1.0));
        if (theta.sign() < 0) t = -t;
        const Real c = 1.0 / sqrt(sqr(t) + 1.0);
        const Real s = t * c;
        const Real tau = s / (1.0 + c);
        A(p, p) -= t * apq;
        A(q, q) += t * apq;
        A(p, q) = 0.0;
        A(q, p) = 0.0;
        for (int r = 0; r < n; ++r) {
          if (r == p || r == q) continue;
          const Real grp = A(r, p);
          const Real grq = A(r, q);
          Real new_rp = grp - s * (grq + grp * tau);
          Real new_rq = grq + s * (grp - grq * tau);
          A(p, r) = new_rp;
          A(q, r) = new_rq;
          A(r, p) = std::move(new_rp);
          A(r, q) = std::move(new_rq);
        }
      }
    }
  }
  if (!converged) throw NoConvergence("Jacobi sweep cap reached");

  std::vector<Real> lambdas;
  lambdas.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) lambdas.push_back(A(i, i));
  std::sort(lambdas.begin(), lambdas.end(),
            [](const Real& x, const Real& y) { return x < y; });
  return {std::move(lambdas), OracleBackend::jacobi_rotations, off_norm()};
}

Complex dense_det(const MatrixDense& m, const PrecisionContext& ctx) {
  const int n = m.size();
  std::vector<Complex> a;
  a.reserve(static_cast<std::size_t>(n) * static_cast<std::size_t>(n));
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < n; ++c) a.push_back(m.at(r, c));
  }
  const auto A = [&](int r, int c) -> Complex& {
    return a[static_cast<std::size_t>(r) * static_cast<std::size_t>(n) +
             static_cast<std::size_t>(c)];
  };
  Complex det = ctx.complex(ctx.real(1.0));
  for (int k = 0; k < n; ++k) {
    int pivot = k;
    Real best = abs(A(k, k));
    for (int r = k + 1; r < n; ++r) {
      Real mag = abs(A(r, k));
      if (mag > best) {
        best = std::move(mag);
        pivot = r;
      }
    }
    if (best.is_zero()) return ctx.complex(ctx.real(0.0));
    if (pivot != k) {
      for (int c = 0; c < n; ++c) std::swap(A(k, c), A(pivot, c));
      det = -det;
    }
    det *= A(k, k);
    for (int r = k + 1; r < n; ++r) {
      const Complex factor = A(r, k) / A(k, k);
      for (int c = k + 1; c < n; ++c) A(r, c) -= factor * A(k, c);
    }
  }
  return det;
}

OracleSpectrum charpoly_root_isolate(const ProblemInstance& inst, const PrecisionContext& ctx,
                                     const Real& tol) {
  if (!inst.alpha().is_real()) throw DomainError("charpoly_root_isolate needs real alpha");
  const int n = inst.n();
  const auto D = [&](const Real& lambda) { return charpoly_L(inst, lambda, ctx); };
  std::vector<Real> mesh;
  mesh.reserve(static_cast<std::size_t>(n) + 1);
  for (int k = 0; k <= n; ++k) {
    Real x = ctx.pi();
    x.mul_long(k);
    x.div_long(n);
    mesh.push_back(g(x));
  }
  // D is a degree-n polynomial with coefficients of size O(n^2) near the
  // spectrum; a mesh value is declared a root when it vanishes to half the
  // working digits, far below the O(alpha) values at non-root mesh points.
  const Real zero_threshold = ldexp(ctx.real(1.0), -ctx.bits() / 2) * static_cast<double>(n * n);

  std::vector<Real> lambdas;
  lambdas.reserve(static_cast<std::size_t>(n));
  Real widest(ctx.prec());
  for (int j = 1; j <= n; ++j) {
    if (j % 2 == 1) {
      const Real& candidate = mesh[static_cast<std::size_t>(j - 1)];
      if (abs(D(candidate)) > zero_threshold) {
        throw NoConvergence("no characteristic root at mesh point " + std::to_string(j - 1));
      }
      lambdas.push_back(candidate);
      continue;
    }
    Real lo = mesh[static_cast<std::size_t>(j - 1)];
    Real hi = mesh[static_cast<std::size_t>(j)];
    const int sign_lo = D(lo).sign();
    if (sign_lo == 0) throw NoConvergence("characteristic root at an odd mesh point");
    // The right end may itself be the next root, so only the left sign is used.
    while (hi - lo > tol) {
      Real mid = ldexp(lo + hi, -1);
      if (mid <= lo || mid >= hi) break;
      if (D(mid).sign() == sign_lo) {
        lo = std::move(mid);
      } else {
        hi = std::move(mid);
      }
    }
    widest = max(widest, hi - lo);
    lambdas.push_back(ldexp(lo + hi, -1));
  }
  return {std::move(lambdas), OracleBackend::charpoly_bisection, std::move(widest)};
}

}  // namespace cyclap
