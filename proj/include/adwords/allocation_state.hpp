#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "adwords/instance.hpp"

namespace adwords {

/// One entry of the assignment log. `bidder` is empty for a rejection.
struct Assignment {
  std::size_t impression = 0;
  std::optional<std::size_t> bidder;
  std::vector<Bid> earned;  // nonzero amounts only, sorted by dim
};

/// Earned revenue per (bidder, dimension) and per-constraint usage. Only the
/// bidders and constraints of the instance are used; impressions are supplied
/// by the caller, so the same state also serves adaptive adversaries.
class AllocationState {
 public:
  explicit AllocationState(const Instance& instance);

  const Instance& instance() const { return *instance_; }

  const Rational& earned(std::size_t bidder, int dim) const;
  /// Sum of earned revenue over K_s.
  const Rational& used(std::size_t bidder, std::size_t constraint) const;
  /// κ = used / budget.
  Rational utilization(std::size_t bidder, std::size_t constraint) const;
  bool is_tight(std::size_t bidder, std::size_t constraint) const;

  Rational remaining_capacity(std::size_t bidder, std::size_t constraint) const;
  /// Throws std::out_of_range for an unknown constraint id.
  Rational remaining_capacity(std::size_t bidder, std::string_view constraint_id) const;

  /// Remaining capacity of the tightest constraint containing `dim`; empty when
  /// no constraint contains it.
  std::optional<Rational> dim_headroom(std::size_t bidder, int dim) const;

  /// Appends an assignment. Throws BudgetOverflow (state untouched) if any
  /// constraint would exceed its budget, std::invalid_argument on a negative
  /// amount.
  void earn(std::size_t impression, std::size_t bidder, const std::vector<Bid>& amounts);
  void reject(std::size_t impression);

  const std::vector<Assignment>& log() const { return log_; }
  const Rational& primal_total() const { return primal_; }
  /// Sum over the log, from scratch.
  Rational recompute_primal() const;

 private:
  const Instance* instance_;
  std::vector<std::vector<Rational>> earned_;  // [u][k]
  std::vector<std::vector<Rational>> used_;    // [u][s]
  std::vector<Assignment> log_;
  Rational primal_;
};

}  // namespace adwords
