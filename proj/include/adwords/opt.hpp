#pragma once

#include <optional>
#include <string_view>

#include "adwords/instance.hpp"

namespace adwords {

struct LpResult {
  double value = 0;
  /// Set when the rational solve finished within the pivot budget.
  std::optional<Rational> exact;
  long pivots = 0;
  long rows = 0;
  long cols = 0;
  /// Impressions left after merging identical bid vectors.
  std::size_t merged_impressions = 0;
};

/// Offline fractional optimum: x_uv in [0,1], e_uvk <= r_uvk·x_uv,
/// Σ_u x_uv <= 1, Σ_{v,k∈s} e_uvk <= B_us, maximize Σ e. Rational pivots,
/// switching to a double solve after `rational_pivot_limit` pivots.
LpResult opt_lp(const Instance& instance, long rational_pivot_limit = 10000);

enum class Semantics { Partial, AllOrNothing };

std::string_view to_string(Semantics semantics);
std::optional<Semantics> parse_semantics(std::string_view name);

/// Exact integral optimum by enumeration: each impression goes to one bidder
/// or nobody. Partial lets an assignment earn any feasible part of the bids;
/// all-or-nothing requires every assigned bid to be earned in full. Throws
/// OracleLimitExceeded beyond 12 impressions or 4 bidders.
Rational opt_brute(const Instance& instance, Semantics semantics);

/// Maximum revenue one bidder can earn from per-dimension totals `caps`
/// under its budgets (exact).
Rational best_partial_earning(const Instance& instance, std::size_t bidder, const std::vector<Rational>& caps);

/// The optimum recorded in a generated transcript's "opt_analytic" meta
/// field. Throws Error when absent.
Rational opt_analytic(const Instance& transcript);

}  // namespace adwords
