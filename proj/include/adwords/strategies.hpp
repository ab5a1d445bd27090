#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "adwords/allocation_state.hpp"
#include "adwords/labels.hpp"
#include "adwords/laminar_forest.hpp"

namespace adwords {

enum class Strategy { AdLaminar, AdGeneral, AdGenAon, AdGenP, GreedyLaminar };

std::string_view to_string(Strategy strategy);
std::optional<Strategy> parse_strategy(std::string_view name);
const std::vector<Strategy>& all_strategies();
bool requires_laminar(Strategy strategy);

/// Dims with a singleton budget and κ < 1 on every constraint containing them.
std::vector<int> adlaminar_active_dims(const AllocationState& state, const LaminarForest& forest,
                                       std::size_t bidder);

/// D_uv = Σ_{active k} (1 − e^{g({k}) − 1})·r(k).
double adlaminar_score(const AllocationState& state, const LabelState& labels, std::size_t bidder,
                       const Impression& impression);

/// Exponential potentials of the general-budget family, evaluated from exact κ.
class PotentialState {
 public:
  enum class Kind { General, AllOrNothing };

  /// General: base 2p+2, exponent κ. AllOrNothing: base p+1, exponent
  /// κ/(1−eps). p = 0 is treated as 1.
  PotentialState(Kind kind, int p, double eps = 0.0);

  Kind kind() const { return kind_; }
  int p() const { return p_; }

  /// φ = (B/p)(base^{κ·mult} − 1).
  double phi(const AllocationState& state, std::size_t bidder, std::size_t constraint) const;
  /// Σ_{s ∋ k} φ_s / B_s <= 1.
  bool is_active(const AllocationState& state, std::size_t bidder, int dim) const;
  std::vector<int> active_dims(const AllocationState& state, std::size_t bidder) const;

 private:
  Kind kind_;
  int p_;
  double base_;
  double mult_;
};

/// Maximum total earnable from `impression` under per-dim bid caps and the
/// remaining laminar capacities: start from full bids, sweep the forest
/// bottom-up, and at any node over capacity cut dims in decreasing index
/// order.
std::vector<Bid> max_earnable_laminar(const AllocationState& state, const LaminarForest& forest,
                                      std::size_t bidder, const Impression& impression);

}  // namespace adwords
