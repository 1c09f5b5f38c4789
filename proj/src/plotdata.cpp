#include "cyclap/cli.hpp"

#include <cmath>

namespace cyclap::cli {

namespace {

constexpr int kSamples = 200;
// Plotting tools read doubles, so curves carry 17 significant digits.
constexpr int kPlotDigits = 17;
// Samples of tan(n x / 2) beyond this magnitude are dropped near the poles.
constexpr double kClip = 10.0;

void add(RowSet& rs, const char* series, int j, const Real& x, const Real& y) {
  rs.rows.push_back({series, j, x.to_string(kPlotDigits), y.to_string(kPlotDigits)});
}

Real at(const Real& lo, const Real& hi, int i, int count) {
  return lo + (hi - lo) * (static_cast<double>(i) / count);
}

std::vector<int> even_indices(int n, std::optional<int> j) {
  if (j) {
    require_even_index(n, *j);
    return {*j};
  }
  std::vector<int> out;
  for (int k = 2; k <= n; k += 2) out.push_back(k);
  return out;
}

Real mesh(const PrecisionContext& ctx, long k, long m) {
  Real x = ctx.pi();
  x.mul_long(k);
  x.div_long(m);
  return x;
}

}  // namespace

Figure parse_figure(std::string_view text) {
  if (text == "main_eq") return Figure::main_eq;
  if (text == "eta_lines") return Figure::eta_lines;
  if (text == "theta_lambda") return Figure::theta_lambda;
  if (text == "alpha_sweep") return Figure::alpha_sweep;
  throw DomainError("unknown figure '" + std::string(text) + "'");
}

RowSet plot_data(Figure fig, const AlphaParam& a, int n, std::optional<int> j,
                 const PrecisionContext& ctx) {
  if (n < 3) throw DomainError("n must be at least 3");
  RowSet rs;
  rs.columns = {"series", "j", "x", "y"};
  const Real tol = ctx.default_tol();
  const Real zero = ctx.real(0.0);

  switch (fig) {
    case Figure::main_eq: {
      // Both sides of x = d_{n,j} + eta(x)/n on each I_{n,j}.
      for (int k : even_indices(n, j)) {
        const Real lo = mesh(ctx, k - 1, n);
        const Real hi = mesh(ctx, k, n);
        for (int i = 0; i <= kSamples; ++i) {
          const Real x = at(lo, hi, i, kSamples);
          add(rs, "identity", k, x, x);
          add(rs, "f", k, x, f_main(a, n, k, x, ctx));
        }
        const Real t = solve_theta_newton(a, n, k, ctx, tol).root;
        add(rs, "root", k, t, t);
      }
      break;
    }
    case Figure::eta_lines: {
      // eta with the lines n x - (j-1) pi, then both sides of
      // tan(n x / 2) = -((1 - a)/a) tan(x / 2).
      for (int i = 0; i <= kSamples; ++i) {
        const Real x = at(zero, ctx.pi(), i, kSamples);
        add(rs, "eta", 0, x, eta(a, x, ctx));
        const Real rhs = -tan(ldexp(x, -1)) / a.kappa();
        if (abs(rhs) <= kClip) add(rs, "tan_rhs", 0, x, rhs);
        const Real lhs = tan(ldexp(x * static_cast<double>(n), -1));
        if (abs(lhs) <= kClip) add(rs, "tan_lhs", 0, x, lhs);
      }
      for (int k : even_indices(n, j)) {
        const Real lo = mesh(ctx, k - 1, n);
        const Real hi = mesh(ctx, k, n);
        Real shift = ctx.pi();
        shift.mul_long(k - 1);
        for (int i = 0; i <= kSamples; ++i) {
          const Real x = at(lo, hi, i, kSamples);
          add(rs, "line", k, x, x * static_cast<double>(n) - shift);
        }
        const Real t = solve_theta_newton(a, n, k, ctx, tol).root;
        add(rs, "root", k, t, eta(a, t, ctx));
      }
      break;
    }
    case Figure::theta_lambda: {
      // The symbol g on [0, pi], the mesh k pi / n and the eigenpairs.
      for (int i = 0; i <= kSamples; ++i) {
        const Real x = at(zero, ctx.pi(), i, kSamples);
        add(rs, "g", 0, x, g(x));
      }
      for (int k = 0; k <= n; ++k) {
        const Real x = mesh(ctx, k, n);
        add(rs, "mesh", k, x, g(x));
      }
      const SpectrumResult spec =
          full_spectrum(ProblemInstance(a, n), SpectrumMethod::newton, ctx, tol);
      for (int k = 1; k <= n; ++k) {
        if (j && *j != k) continue;
        const auto i = static_cast<std::size_t>(k - 1);
        add(rs, "eigenvalue", k, spec.thetas[i], spec.lambdas[i]);
      }
      break;
    }
    case Figure::alpha_sweep: {
      // lambda_{alpha,n,j} as alpha runs over (0, 1).
      if (!j) throw DomainError("alpha_sweep needs --j");
      require_even_index(n, *j);
      std::vector<Real> alphas;
      for (int i = 1; i < kSamples; ++i) {
        alphas.push_back(ctx.from_long(i) / static_cast<double>(kSamples));
      }
      for (const SweepPoint& p : alpha_sweep(n, *j, alphas, ctx, tol)) {
        add(rs, "lambda", *j, p.alpha, p.lambda);
      }
      break;
    }
  }
  return rs;
}

}  // namespace cyclap::cli
