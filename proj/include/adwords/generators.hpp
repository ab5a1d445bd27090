#pragma once

#include <cstdint>
#include <optional>

#include "adwords/instance.hpp"

namespace adwords {

struct RandomInstanceSpec {
  Mode mode = Mode::Laminar;
  int bidders = 3;
  int dimensions = 16;
  /// Laminar: levels per tree, singletons at the bottom.
  int depth = 3;
  int branching = 2;
  /// General: every dimension joins between 1 and p constraints.
  int p = 4;
  int impressions = 100;
  /// Largest Σ_{k∈s} r / B as a multiple of the small-bids threshold of the
  /// target p (depth in laminar mode).
  double bid_scale = 0.5;
  /// Absolute cap on Σ_{k∈s} r / B; overrides bid_scale.
  std::optional<double> bid_fraction;
  int max_bid_dims = 3;
  double bid_probability = 0.7;
};

/// The bid-to-budget cap a spec resolves to.
double resolved_bid_fraction(const RandomInstanceSpec& spec);

/// Per bidder: dims shuffled into complete `branching`-ary trees of `depth`
/// levels with singleton leaves. Leaf budgets lie in [1, 2); an inner budget
/// is a random fraction in [0.3, 1) of its children's total. Bids are
/// multiples of 2^-20.
Instance random_laminar(const RandomInstanceSpec& spec, std::uint64_t seed);

/// Per bidder: every dimension joins 1..p constraints drawn from a pool of
/// `dimensions` candidates; empty candidates are dropped.
Instance random_general(const RandomInstanceSpec& spec, std::uint64_t seed);

Instance random_instance(const RandomInstanceSpec& spec, std::uint64_t seed);

}  // namespace adwords
