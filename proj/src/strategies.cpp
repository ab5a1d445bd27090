#include "adwords/strategies.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace adwords {

std::string_view to_string(Strategy strategy) {
  switch (strategy) {
    case Strategy::AdLaminar: return "adlaminar";
    case Strategy::AdGeneral: return "adgeneral";
    case Strategy::AdGenAon: return "adgen-aon";
    case Strategy::AdGenP: return "adgen-p";
    case Strategy::GreedyLaminar: return "greedy-laminar";
  }
  return "?";
}

std::optional<Strategy> parse_strategy(std::string_view name) {
  for (Strategy s : all_strategies()) {
    if (to_string(s) == name) return s;
  }
  return std::nullopt;
}

const std::vector<Strategy>& all_strategies() {
  static const std::vector<Strategy> all = {Strategy::AdLaminar, Strategy::AdGeneral, Strategy::AdGenAon,
                                            Strategy::AdGenP, Strategy::GreedyLaminar};
  return all;
}

bool requires_laminar(Strategy strategy) {
  return strategy == Strategy::AdLaminar || strategy == Strategy::GreedyLaminar;
}

std::vector<int> adlaminar_active_dims(const AllocationState& state, const LaminarForest& forest,
                                       std::size_t bidder) {
  std::vector<int> out;
  for (int k = 0; k < state.instance().num_dimensions(); ++k) {
    if (forest.singleton_of(k) < 0) continue;
    bool active = true;
    for (int s : state.instance().constraints_containing(bidder, k)) {
      if (state.is_tight(bidder, static_cast<std::size_t>(s))) active = false;
    }
    if (active) out.push_back(k);
  }
  return out;
}

double adlaminar_score(const AllocationState& state, const LabelState& labels, std::size_t bidder,
                       const Impression& impression) {
  const LaminarForest& forest = labels.forest();
  double score = 0;
  for (const Bid& b : impression.bids_of(bidder)) {
    const int leaf = forest.singleton_of(b.dim);
    if (leaf < 0) continue;
    bool active = true;
    for (int s : state.instance().constraints_containing(bidder, b.dim)) {
      if (state.is_tight(bidder, static_cast<std::size_t>(s))) active = false;
    }
    if (!active) continue;
    // 1 − e^{g−1} = −expm1(g − 1)
    score += -std::expm1(labels.g_value(leaf).to_double() - 1.0) * b.value.to_double();
  }
  return score;
}

PotentialState::PotentialState(Kind kind, int p, double eps) : kind_(kind), p_(std::max(p, 1)) {
  if (kind == Kind::General) {
    base_ = 2.0 * p_ + 2.0;
    mult_ = 1.0;
  } else {
    base_ = p_ + 1.0;
    mult_ = 1.0 / (1.0 - eps);
  }
}

double PotentialState::phi(const AllocationState& state, std::size_t bidder, std::size_t constraint) const {
  const double kappa = state.utilization(bidder, constraint).to_double();
  const double budget = state.instance().bidder(bidder).constraints[constraint].budget.to_double();
  return budget / p_ * (std::pow(base_, kappa * mult_) - 1.0);
}

bool PotentialState::is_active(const AllocationState& state, std::size_t bidder, int dim) const {
  double total = 0;
  for (int s : state.instance().constraints_containing(bidder, dim)) {
    const double kappa = state.utilization(bidder, static_cast<std::size_t>(s)).to_double();
    // φ/B without the B round trip
    total += (std::pow(base_, kappa * mult_) - 1.0) / p_;
  }
  return total <= 1.0;
}

std::vector<int> PotentialState::active_dims(const AllocationState& state, std::size_t bidder) const {
  std::vector<int> out;
  for (int k = 0; k < state.instance().num_dimensions(); ++k) {
    if (is_active(state, bidder, k)) out.push_back(k);
  }
  return out;
}

std::vector<Bid> max_earnable_laminar(const AllocationState& state, const LaminarForest& forest,
                                      std::size_t bidder, const Impression& impression) {
  std::map<int, Rational> earn;
  for (const Bid& b : impression.bids_of(bidder)) earn[b.dim] = b.value;
  const auto& cons = state.instance().bidder(bidder).constraints;
  for (int s : forest.post_order()) {
    const auto& dims = cons[static_cast<std::size_t>(s)].dims;
    Rational total;
    for (int k : dims) {
      if (auto it = earn.find(k); it != earn.end()) total += it->second;
    }
    Rational excess = total - state.remaining_capacity(bidder, static_cast<std::size_t>(s));
    for (auto k = dims.rbegin(); k != dims.rend() && excess.sign() > 0; ++k) {
      auto it = earn.find(*k);
      if (it == earn.end() || it->second.is_zero()) continue;
      const Rational cut = min(it->second, excess);
      it->second -= cut;
      excess -= cut;
    }
  }
  std::vector<Bid> out;
  for (auto& [k, v] : earn) {
    if (!v.is_zero()) out.push_back(Bid{k, std::move(v)});
  }
  return out;
}

}  // namespace adwords
