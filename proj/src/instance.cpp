#include "adwords/instance.hpp"

#include "adwords/errors.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <unordered_set>

namespace adwords {

namespace {

std::string join_violations(const std::vector<std::string>& violations) {
  std::string out = "invalid instance";
  for (const auto& v : violations) out += "\n  " + v;
  return out;
}

}  // namespace

ValidationError::ValidationError(std::vector<std::string> violations)
    : Error(join_violations(violations)), violations_(std::move(violations)) {}

std::string_view to_string(Mode mode) { return mode == Mode::Laminar ? "laminar" : "general"; }

std::optional<Mode> parse_mode(std::string_view text) {
  if (text == "laminar") return Mode::Laminar;
  if (text == "general") return Mode::General;
  return std::nullopt;
}

Rational Impression::bid(std::size_t bidder, int dim) const {
  for (const Bid& b : bids_of(bidder)) {
    if (b.dim == dim) return b.value;
  }
  return Rational(0);
}

Instance::Instance(Mode mode, int num_dimensions, std::vector<Bidder> bidders,
                   std::vector<Impression> impressions)
    : mode_(mode),
      num_dimensions_(num_dimensions),
      bidders_(std::move(bidders)),
      impressions_(std::move(impressions)) {
  for (Bidder& b : bidders_) {
    for (BudgetConstraint& c : b.constraints) {
      std::sort(c.dims.begin(), c.dims.end());
      c.dims.erase(std::unique(c.dims.begin(), c.dims.end()), c.dims.end());
    }
  }
  for (Impression& imp : impressions_) {
    imp.bids.resize(bidders_.size());
    for (auto& row : imp.bids) {
      std::stable_sort(row.begin(), row.end(), [](const Bid& a, const Bid& b) { return a.dim < b.dim; });
      // merge duplicate dims, drop explicit zeros
      std::vector<Bid> merged;
      for (Bid& bid : row) {
        if (!merged.empty() && merged.back().dim == bid.dim) {
          merged.back().value += bid.value;
        } else {
          merged.push_back(std::move(bid));
        }
      }
      std::erase_if(merged, [](const Bid& b) { return b.value.is_zero(); });
      row = std::move(merged);
    }
  }
  const auto dims = static_cast<std::size_t>(std::max(num_dimensions_, 0));
  containing_.assign(bidders_.size(), std::vector<std::vector<int>>(dims));
  for (std::size_t u = 0; u < bidders_.size(); ++u) {
    const auto& cons = bidders_[u].constraints;
    for (std::size_t s = 0; s < cons.size(); ++s) {
      for (int k : cons[s].dims) {
        if (k >= 0 && static_cast<std::size_t>(k) < dims) {
          containing_[u][static_cast<std::size_t>(k)].push_back(static_cast<int>(s));
        }
      }
    }
  }
}

std::optional<std::size_t> Instance::bidder_index(std::string_view id) const {
  for (std::size_t u = 0; u < bidders_.size(); ++u) {
    if (bidders_[u].id == id) return u;
  }
  return std::nullopt;
}

std::optional<std::size_t> Instance::constraint_index(std::size_t bidder, std::string_view id) const {
  if (bidder >= bidders_.size()) return std::nullopt;
  const auto& cons = bidders_[bidder].constraints;
  for (std::size_t s = 0; s < cons.size(); ++s) {
    if (cons[s].id == id) return s;
  }
  return std::nullopt;
}

std::span<const int> Instance::constraints_containing(std::size_t bidder, int dim) const {
  if (bidder >= containing_.size() || dim < 0 ||
      static_cast<std::size_t>(dim) >= containing_[bidder].size()) {
    return {};
  }
  return containing_[bidder][static_cast<std::size_t>(dim)];
}

double small_bids_threshold(int p) {
  const long base = 2L * p + 2;
  const double threshold = 1.0 / std::log2(static_cast<double>(base));
  const bool power_of_two = (base & (base - 1)) == 0;
  return power_of_two ? threshold : std::nextafter(threshold, 0.0);
}

InstanceStats instance_stats(const Instance& instance) {
  InstanceStats stats;
  for (std::size_t u = 0; u < instance.num_bidders(); ++u) {
    for (int k = 0; k < instance.num_dimensions(); ++k) {
      stats.p = std::max(stats.p, static_cast<int>(instance.constraints_containing(u, k).size()));
    }
  }
  for (std::size_t u = 0; u < instance.num_bidders(); ++u) {
    const auto& cons = instance.bidder(u).constraints;
    std::vector<Rational> sums(cons.size());
    std::vector<int> touched;
    const std::vector<Bid>* previous = nullptr;
    for (const Impression& imp : instance.impressions()) {
      if (u >= imp.bids.size()) continue;
      const auto& row = imp.bids[u];
      if (row.empty() || (previous != nullptr && *previous == row)) continue;
      previous = &row;
      touched.clear();
      for (const Bid& b : row) {
        for (int s : instance.constraints_containing(u, b.dim)) {
          if (sums[static_cast<std::size_t>(s)].is_zero()) touched.push_back(s);
          sums[static_cast<std::size_t>(s)] += b.value;
        }
      }
      for (int s : touched) {
        auto& sum = sums[static_cast<std::size_t>(s)];
        const auto& budget = cons[static_cast<std::size_t>(s)].budget;
        if (budget.sign() > 0) stats.eps = max(stats.eps, sum / budget);
        sum = Rational(0);
      }
    }
  }
  stats.small_bids_ok = stats.eps <= Rational::from_double(small_bids_threshold(stats.p));
  return stats;
}

namespace {

bool is_subset(const std::vector<int>& a, const std::vector<int>& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

bool intersects(const std::vector<int>& a, const std::vector<int>& b) {
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() && j != b.end()) {
    if (*i == *j) return true;
    if (*i < *j) ++i; else ++j;
  }
  return false;
}

}  // namespace

std::vector<std::string> validate(const Instance& instance) {
  std::vector<std::string> out;
  const int dims = instance.num_dimensions();
  if (dims < 0) out.push_back("negative num_dimensions");
  std::unordered_set<std::string> bidder_ids;
  for (const Bidder& b : instance.bidders()) {
    if (b.id.empty()) out.push_back("bidder with empty id");
    if (!bidder_ids.insert(b.id).second) out.push_back("duplicate bidder id '" + b.id + "'");
    std::unordered_set<std::string> cons_ids;
    for (const BudgetConstraint& c : b.constraints) {
      const std::string where = "bidder '" + b.id + "' constraint '" + c.id + "'";
      if (!cons_ids.insert(c.id).second) out.push_back("duplicate constraint id: " + where);
      if (c.dims.empty()) out.push_back("empty constraint: " + where);
      for (int k : c.dims) {
        if (k < 0 || k >= dims) {
          out.push_back("dimension out of range: " + where + " dim " + std::to_string(k));
        }
      }
      if (c.budget.sign() <= 0) out.push_back("non-positive budget: " + where);
    }
  }
  std::unordered_set<std::string> impression_ids;
  for (const Impression& imp : instance.impressions()) {
    if (!impression_ids.insert(imp.id).second) out.push_back("duplicate impression id '" + imp.id + "'");
    for (std::size_t u = 0; u < imp.bids.size(); ++u) {
      for (const Bid& bid : imp.bids[u]) {
        const std::string where = "impression '" + imp.id + "' bidder '" +
                                  (u < instance.num_bidders() ? instance.bidder(u).id : "?") +
                                  "' dim " + std::to_string(bid.dim);
        if (bid.dim < 0 || bid.dim >= dims) out.push_back("dimension out of range: " + where);
        if (bid.value.sign() < 0) out.push_back("negative bid: " + where);
      }
    }
  }
  if (instance.mode() != Mode::Laminar) return out;

  for (std::size_t u = 0; u < instance.num_bidders(); ++u) {
    const Bidder& b = instance.bidder(u);
    const auto& cons = b.constraints;
    for (std::size_t i = 0; i < cons.size(); ++i) {
      for (std::size_t j = i + 1; j < cons.size(); ++j) {
        const auto& a = cons[i].dims;
        const auto& c = cons[j].dims;
        if (intersects(a, c) && !is_subset(a, c) && !is_subset(c, a)) {
          out.push_back("non-laminar pair: bidder '" + b.id + "' constraints '" + cons[i].id +
                        "' and '" + cons[j].id + "'");
        }
      }
    }
    std::set<int> needed;
    for (const auto& c : cons) needed.insert(c.dims.begin(), c.dims.end());
    for (const Impression& imp : instance.impressions()) {
      for (const Bid& bid : imp.bids_of(u)) needed.insert(bid.dim);
    }
    std::set<int> singletons;
    for (const auto& c : cons) {
      if (c.dims.size() == 1) singletons.insert(c.dims.front());
    }
    for (int k : needed) {
      if (!singletons.contains(k)) {
        out.push_back("missing singleton budget: bidder '" + b.id + "' dim " + std::to_string(k));
      }
    }
  }
  return out;
}

Instance synthesize_singletons(const Instance& instance) {
  std::vector<Bidder> bidders = instance.bidders();
  for (std::size_t u = 0; u < bidders.size(); ++u) {
    Bidder& b = bidders[u];
    std::map<int, Rational> bid_totals;
    for (const Impression& imp : instance.impressions()) {
      for (const Bid& bid : imp.bids_of(u)) bid_totals[bid.dim] += bid.value;
    }
    std::set<int> needed;
    for (const auto& c : b.constraints) needed.insert(c.dims.begin(), c.dims.end());
    for (const auto& [k, total] : bid_totals) needed.insert(k);
    std::set<int> singletons;
    std::set<std::string> ids;
    for (const auto& c : b.constraints) {
      if (c.dims.size() == 1) singletons.insert(c.dims.front());
      ids.insert(c.id);
    }
    std::vector<BudgetConstraint> added;
    for (int k : needed) {
      if (singletons.contains(k)) continue;
      std::optional<Rational> tightest;
      for (const auto& c : b.constraints) {
        if (std::binary_search(c.dims.begin(), c.dims.end(), k) && c.budget.sign() > 0) {
          tightest = tightest ? min(*tightest, c.budget) : c.budget;
        }
      }
      Rational budget = tightest ? *tightest : bid_totals[k];
      if (budget.sign() <= 0) budget = Rational(1);
      std::string id = "{" + std::to_string(k) + "}";
      while (ids.contains(id)) id += "'";
      ids.insert(id);
      added.push_back(BudgetConstraint{id, {k}, budget});
    }
    for (auto& c : added) b.constraints.push_back(std::move(c));
  }
  Instance out(instance.mode(), instance.num_dimensions(), std::move(bidders), instance.impressions());
  out.set_meta(instance.meta());
  return out;
}

Instance with_impressions(const Instance& instance, std::vector<Impression> impressions) {
  Instance out(instance.mode(), instance.num_dimensions(), instance.bidders(), std::move(impressions));
  out.set_meta(instance.meta());
  return out;
}

Instance scaled(const Instance& instance, const Rational& factor) {
  std::vector<Bidder> bidders = instance.bidders();
  for (auto& b : bidders) {
    for (auto& c : b.constraints) c.budget *= factor;
  }
  std::vector<Impression> impressions = instance.impressions();
  for (auto& imp : impressions) {
    for (auto& row : imp.bids) {
      for (auto& bid : row) bid.value *= factor;
    }
  }
  Instance out(instance.mode(), instance.num_dimensions(), std::move(bidders), std::move(impressions));
  out.set_meta(instance.meta());
  return out;
}

}  // namespace adwords
