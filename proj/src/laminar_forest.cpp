#include "adwords/laminar_forest.hpp"

#include <algorithm>

#include "adwords/errors.hpp"

namespace adwords {

LaminarForest::LaminarForest(const Instance& instance, std::size_t bidder)
    : constraints_(&instance.bidder(bidder).constraints) {
  const auto& cons = *constraints_;
  const int n = static_cast<int>(cons.size());
  parent_.assign(cons.size(), -1);
  children_.assign(cons.size(), {});
  for (int s = 0; s < n; ++s) {
    const auto& a = cons[idx(s)].dims;
    int best = -1;
    for (int t = 0; t < n; ++t) {
      if (t == s) continue;
      const auto& b = cons[idx(t)].dims;
      if (b.size() < a.size() || (b.size() == a.size() && t < s)) continue;
      if (!std::includes(b.begin(), b.end(), a.begin(), a.end())) continue;
      if (best < 0 || b.size() < cons[idx(best)].dims.size()) best = t;
    }
    parent_[idx(s)] = best;
  }
  for (int s = 0; s < n; ++s) {
    if (parent_[idx(s)] < 0) {
      roots_.push_back(s);
    } else {
      children_[idx(parent_[idx(s)])].push_back(s);
    }
  }
  // laminarity: two nodes sharing a dim must be ancestor-related
  ancestors_.assign(cons.size(), {});
  for (int s = 0; s < n; ++s) {
    for (int a = s; a >= 0; a = parent_[idx(a)]) {
      ancestors_[idx(s)].push_back(a);
      if (ancestors_[idx(s)].size() > cons.size()) throw InvariantViolation("cyclic constraint forest");
    }
  }
  std::vector<int> stack(roots_.rbegin(), roots_.rend());
  std::vector<int> pre;
  while (!stack.empty()) {
    const int s = stack.back();
    stack.pop_back();
    pre.push_back(s);
    for (auto it = children_[idx(s)].rbegin(); it != children_[idx(s)].rend(); ++it) stack.push_back(*it);
  }
  post_order_.assign(pre.rbegin(), pre.rend());

  singleton_of_.assign(static_cast<std::size_t>(std::max(instance.num_dimensions(), 0)), -1);
  singleton_dim_.assign(cons.size(), -1);
  for (int s = 0; s < n; ++s) {
    const auto& dims = cons[idx(s)].dims;
    if (dims.size() != 1) continue;
    const int k = dims.front();
    if (k < 0 || static_cast<std::size_t>(k) >= singleton_of_.size()) continue;
    int& cur = singleton_of_[static_cast<std::size_t>(k)];
    if (cur < 0 || depth(s) > depth(cur)) cur = s;
  }
  for (std::size_t k = 0; k < singleton_of_.size(); ++k) {
    if (singleton_of_[k] >= 0) singleton_dim_[idx(singleton_of_[k])] = static_cast<int>(k);
  }
  desc_singletons_.assign(cons.size(), {});
  for (int s : post_order_) {
    auto& out = desc_singletons_[idx(s)];
    if (singleton_dim_[idx(s)] >= 0) out.push_back(s);
    for (int c : children_[idx(s)]) {
      const auto& sub = desc_singletons_[idx(c)];
      out.insert(out.end(), sub.begin(), sub.end());
    }
    std::sort(out.begin(), out.end());
  }
  for (std::size_t k = 0; k < singleton_of_.size(); ++k) {
    const auto& containing = instance.constraints_containing(bidder, static_cast<int>(k));
    if (containing.empty()) continue;
    const int leaf = singleton_of_[k];
    for (int s : containing) {
      if (leaf < 0 || !contains(s, leaf)) {
        throw InvariantViolation("constraint family of bidder '" + instance.bidder(bidder).id +
                                 "' is not laminar with singleton coverage at dim " +
                                 std::to_string(k));
      }
    }
  }
}

bool LaminarForest::contains(int a, int d) const {
  const auto& anc = ancestors_[idx(d)];
  return std::find(anc.begin(), anc.end(), a) != anc.end();
}

int LaminarForest::singleton_of(int dim) const {
  if (dim < 0 || static_cast<std::size_t>(dim) >= singleton_of_.size()) return -1;
  return singleton_of_[static_cast<std::size_t>(dim)];
}

std::vector<LaminarForest> build_forests(const Instance& instance) {
  std::vector<LaminarForest> out;
  out.reserve(instance.num_bidders());
  for (std::size_t u = 0; u < instance.num_bidders(); ++u) out.emplace_back(instance, u);
  return out;
}

}  // namespace adwords
