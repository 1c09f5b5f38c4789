#pragma once

// Closed-form approximations of the even-index eigenvalues: the second-order
// expansion around d_{n,j}, the variant around j pi/(n+1), and the
// small-j expansion of the first eigenvalues.

#include "cyclap/symbolfns.hpp"

namespace cyclap {

enum class AsymptoticOrder { theta_first, lambda_second, lambda_second_alt, small_j };
const char* order_name(AsymptoticOrder order);

struct AsymptoticEstimate {
  Real value;
  AsymptoticOrder order = AsymptoticOrder::lambda_second;
  /// The error decays like n^-k (times j^4 for small_j).
  int claimed_error_decay = 0;
};

/// d_{n,j} + eta(d_{n,j})/n, within pi K1 / n^2 of theta_j.
Real theta_first_order(const AlphaParam& a, int n, int j, const PrecisionContext& ctx);
Real theta_first_order_bound(const AlphaParam& a, int n, const PrecisionContext& ctx);

/// Lambda(x) = g + g' eta/n + (g' eta eta' + g'' eta^2/2)/n^2 at x = d_{n,j};
/// error O(1/n^3).
AsymptoticEstimate lambda_second_order(const AlphaParam& a, int n, int j,
                                       const PrecisionContext& ctx);
/// The same expansion with eta~ = eta + x - pi at x = j pi/(n+1) and n + 1 in
/// place of n; exact when Re(alpha) = 1/2.
AsymptoticEstimate lambda_second_order_alt(const AlphaParam& a, int n, int j,
                                           const PrecisionContext& ctx);
/// j^2 pi^2/n^2 - 2 j^2 (1 - a) pi^2 / (a n^3), error O(j^4/n^4).
AsymptoticEstimate lambda_small_j(const AlphaParam& a, int n, int j, const PrecisionContext& ctx);

}  // namespace cyclap
