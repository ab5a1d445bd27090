#include "adwords/generators.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>

namespace adwords {

namespace {

constexpr long kBidGrain = 1L << 20;

// Explicit draws keep files byte-identical across standard libraries.
class Draw {
 public:
  explicit Draw(std::uint64_t seed) : engine_(seed) {}
  long below(long n) { return static_cast<long>(engine_() % static_cast<std::uint64_t>(n)); }
  double unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  bool chance(double p) { return unit() < p; }
  template <typename T>
  void shuffle(std::vector<T>& items) {
    for (std::size_t i = items.size(); i > 1; --i) std::swap(items[i - 1], items[static_cast<std::size_t>(below(static_cast<long>(i)))]);
  }

 private:
  std::mt19937_64 engine_;
};

void check_common(const RandomInstanceSpec& spec) {
  if (spec.bidders < 1 || spec.dimensions < 1 || spec.impressions < 0) {
    throw std::invalid_argument("bidders and dimensions must be positive, impressions non-negative");
  }
  if (spec.max_bid_dims < 1) throw std::invalid_argument("max_bid_dims must be positive");
  if (!(spec.bid_probability > 0 && spec.bid_probability <= 1)) throw std::invalid_argument("bid_probability must lie in (0, 1]");
  const double frac = resolved_bid_fraction(spec);
  if (!(frac > 0)) throw std::invalid_argument("bid fraction must be positive");
}

// Tightest budget over the constraints of a bidder containing each dim.
std::vector<Rational> min_budgets(const Bidder& bidder, int dims) {
  std::vector<std::optional<Rational>> best(static_cast<std::size_t>(dims));
  for (const auto& c : bidder.constraints) {
    for (int k : c.dims) {
      auto& b = best[static_cast<std::size_t>(k)];
      if (!b || c.budget < *b) b = c.budget;
    }
  }
  std::vector<Rational> out;
  for (auto& b : best) out.push_back(b.value_or(Rational(1)));
  return out;
}

std::vector<Impression> random_impressions(const RandomInstanceSpec& spec, const std::vector<Bidder>& bidders,
                                           Draw& draw) {
  const double frac = resolved_bid_fraction(spec);
  std::vector<std::vector<Rational>> floor_budget;
  for (const Bidder& b : bidders) floor_budget.push_back(min_budgets(b, spec.dimensions));
  const int per_bid = std::min(spec.max_bid_dims, spec.dimensions);
  std::vector<int> all(static_cast<std::size_t>(spec.dimensions));
  std::iota(all.begin(), all.end(), 0);

  std::vector<Impression> out;
  for (int v = 0; v < spec.impressions; ++v) {
    Impression imp;
    imp.id = "v" + std::to_string(v);
    imp.bids.resize(bidders.size());
    for (std::size_t u = 0; u < bidders.size(); ++u) {
      if (!draw.chance(spec.bid_probability)) continue;
      const int m = 1 + static_cast<int>(draw.below(per_bid));
      draw.shuffle(all);
      for (int i = 0; i < m; ++i) {
        const int k = all[static_cast<std::size_t>(i)];
        const double limit = frac * floor_budget[u][static_cast<std::size_t>(k)].to_double() / spec.max_bid_dims;
        long grains = static_cast<long>(std::floor(draw.unit() * limit * kBidGrain));
        grains = std::max(grains, 1L);
        imp.bids[u].push_back(Bid{k, Rational(grains, kBidGrain)});
      }
    }
    out.push_back(std::move(imp));
  }
  return out;
}

struct TreeBuilder {
  const RandomInstanceSpec& spec;
  Draw& draw;
  std::vector<BudgetConstraint>& out;
  int next_id = 0;

  // Returns the budget of the subtree rooted at `dims`.
  Rational build(const std::vector<int>& dims, int level) {
    if (dims.size() == 1 || level == spec.depth) {
      Rational total;
      for (int k : dims) {
        Rational budget(1024 + draw.below(1024), 1024);
        out.push_back(BudgetConstraint{"{" + std::to_string(k) + "}", {k}, budget});
        total += budget;
      }
      return total;
    }
    const std::size_t parts = std::min<std::size_t>(static_cast<std::size_t>(spec.branching), dims.size());
    Rational children;
    for (std::size_t i = 0; i < parts; ++i) {
      const std::size_t lo = i * dims.size() / parts;
      const std::size_t hi = (i + 1) * dims.size() / parts;
      children += build(std::vector<int>(dims.begin() + static_cast<long>(lo), dims.begin() + static_cast<long>(hi)),
                        level + 1);
    }
    const Rational share(307 + draw.below(717), 1024);
    const Rational budget = children * share;
    out.push_back(BudgetConstraint{"t" + std::to_string(next_id++), dims, budget});
    return budget;
  }
};

}  // namespace

double resolved_bid_fraction(const RandomInstanceSpec& spec) {
  if (spec.bid_fraction) return *spec.bid_fraction;
  const int p = spec.mode == Mode::Laminar ? spec.depth : spec.p;
  return spec.bid_scale * small_bids_threshold(std::max(p, 1));
}

Instance random_laminar(const RandomInstanceSpec& spec, std::uint64_t seed) {
  check_common(spec);
  if (spec.depth < 1 || spec.branching < 2) throw std::invalid_argument("laminar depth >= 1 and branching >= 2 required");
  Draw draw(seed);
  long leaves = 1;
  for (int i = 1; i < spec.depth; ++i) leaves *= spec.branching;
  std::vector<Bidder> bidders;
  for (int u = 0; u < spec.bidders; ++u) {
    std::vector<int> dims(static_cast<std::size_t>(spec.dimensions));
    std::iota(dims.begin(), dims.end(), 0);
    draw.shuffle(dims);
    Bidder bidder{"u" + std::to_string(u), {}};
    TreeBuilder builder{spec, draw, bidder.constraints};
    for (std::size_t lo = 0; lo < dims.size(); lo += static_cast<std::size_t>(leaves)) {
      const std::size_t hi = std::min(dims.size(), lo + static_cast<std::size_t>(leaves));
      builder.build(std::vector<int>(dims.begin() + static_cast<long>(lo), dims.begin() + static_cast<long>(hi)), 1);
    }
    bidders.push_back(std::move(bidder));
  }
  auto impressions = random_impressions(spec, bidders, draw);
  return Instance(Mode::Laminar, spec.dimensions, std::move(bidders), std::move(impressions));
}

Instance random_general(const RandomInstanceSpec& spec, std::uint64_t seed) {
  check_common(spec);
  if (spec.p < 1) throw std::invalid_argument("p must be positive");
  Draw draw(seed);
  const int pool = spec.dimensions;
  const int per_dim = std::min(spec.p, pool);
  std::vector<Bidder> bidders;
  for (int u = 0; u < spec.bidders; ++u) {
    std::vector<std::vector<int>> members(static_cast<std::size_t>(pool));
    std::vector<int> slots(static_cast<std::size_t>(pool));
    std::iota(slots.begin(), slots.end(), 0);
    for (int k = 0; k < spec.dimensions; ++k) {
      const int c = 1 + static_cast<int>(draw.below(per_dim));
      draw.shuffle(slots);
      for (int i = 0; i < c; ++i) members[static_cast<std::size_t>(slots[static_cast<std::size_t>(i)])].push_back(k);
    }
    Bidder bidder{"u" + std::to_string(u), {}};
    for (int s = 0; s < pool; ++s) {
      auto& dims = members[static_cast<std::size_t>(s)];
      if (dims.empty()) continue;
      const Rational budget = Rational(static_cast<long>(dims.size())) * Rational(256 + draw.below(768), 1024);
      bidder.constraints.push_back(BudgetConstraint{"g" + std::to_string(s), std::move(dims), budget});
    }
    bidders.push_back(std::move(bidder));
  }
  auto impressions = random_impressions(spec, bidders, draw);
  return Instance(Mode::General, spec.dimensions, std::move(bidders), std::move(impressions));
}

Instance random_instance(const RandomInstanceSpec& spec, std::uint64_t seed) {
  return spec.mode == Mode::Laminar ? random_laminar(spec, seed) : random_general(spec, seed);
}

}  // namespace adwords
