#pragma once

#include <string>
#include <vector>

#include "adwords/instance.hpp"

namespace adwords {

/// Containment forest of one bidder's laminar constraint family. Node indices
/// are constraint indices. The parent of a node is its minimal strict
/// superset; among identical dimension sets the later constraint is the
/// parent of the earlier one.
class LaminarForest {
 public:
  LaminarForest() = default;
  /// Requires a laminar family; throws InvariantViolation otherwise.
  LaminarForest(const Instance& instance, std::size_t bidder);

  std::size_t size() const { return parent_.size(); }
  int parent(int s) const { return parent_[idx(s)]; }
  const std::vector<int>& children(int s) const { return children_[idx(s)]; }
  /// s itself first, then up to the root.
  const std::vector<int>& ancestors(int s) const { return ancestors_[idx(s)]; }
  int depth(int s) const { return static_cast<int>(ancestors_[idx(s)].size()) - 1; }
  const std::vector<int>& roots() const { return roots_; }
  /// Children before parents.
  const std::vector<int>& post_order() const { return post_order_; }

  /// True iff `a` is `d` or an ancestor of `d`.
  bool contains(int a, int d) const;

  /// The node carrying dimension k's revenue: the lowest singleton {k}, or -1.
  int singleton_of(int dim) const;
  bool is_singleton_node(int s) const { return singleton_dim_[idx(s)] >= 0; }
  /// Dimension of a singleton node, -1 for other nodes.
  int dim_of(int s) const { return singleton_dim_[idx(s)]; }
  /// Singleton nodes in the subtree of s, ascending.
  const std::vector<int>& descendant_singletons(int s) const { return desc_singletons_[idx(s)]; }

  const BudgetConstraint& constraint(int s) const { return (*constraints_)[idx(s)]; }
  const Rational& budget(int s) const { return constraint(s).budget; }
  const std::string& id(int s) const { return constraint(s).id; }

 private:
  static std::size_t idx(int s) { return static_cast<std::size_t>(s); }

  const std::vector<BudgetConstraint>* constraints_ = nullptr;
  std::vector<int> parent_;
  std::vector<std::vector<int>> children_;
  std::vector<std::vector<int>> ancestors_;
  std::vector<int> roots_;
  std::vector<int> post_order_;
  std::vector<int> singleton_of_;
  std::vector<int> singleton_dim_;
  std::vector<std::vector<int>> desc_singletons_;
};

std::vector<LaminarForest> build_forests(const Instance& instance);

}  // namespace adwords
