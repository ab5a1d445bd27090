#include "adwords/allocation_state.hpp"

#include <map>
#include <stdexcept>

#include "adwords/errors.hpp"

namespace adwords {

namespace {
const Rational kZero{0};
}

AllocationState::AllocationState(const Instance& instance) : instance_(&instance) {
  const auto dims = static_cast<std::size_t>(std::max(instance.num_dimensions(), 0));
  earned_.assign(instance.num_bidders(), std::vector<Rational>(dims));
  used_.resize(instance.num_bidders());
  for (std::size_t u = 0; u < instance.num_bidders(); ++u) {
    used_[u].resize(instance.bidder(u).constraints.size());
  }
}

const Rational& AllocationState::earned(std::size_t bidder, int dim) const {
  if (dim < 0 || static_cast<std::size_t>(dim) >= earned_.at(bidder).size()) return kZero;
  return earned_[bidder][static_cast<std::size_t>(dim)];
}

const Rational& AllocationState::used(std::size_t bidder, std::size_t constraint) const {
  return used_.at(bidder).at(constraint);
}

Rational AllocationState::utilization(std::size_t bidder, std::size_t constraint) const {
  return used(bidder, constraint) / instance_->bidder(bidder).constraints.at(constraint).budget;
}

bool AllocationState::is_tight(std::size_t bidder, std::size_t constraint) const {
  return used(bidder, constraint) == instance_->bidder(bidder).constraints.at(constraint).budget;
}

Rational AllocationState::remaining_capacity(std::size_t bidder, std::size_t constraint) const {
  return instance_->bidder(bidder).constraints.at(constraint).budget - used(bidder, constraint);
}

Rational AllocationState::remaining_capacity(std::size_t bidder, std::string_view constraint_id) const {
  const auto s = instance_->constraint_index(bidder, constraint_id);
  if (!s) throw std::out_of_range("unknown constraint id '" + std::string(constraint_id) + "'");
  return remaining_capacity(bidder, *s);
}

std::optional<Rational> AllocationState::dim_headroom(std::size_t bidder, int dim) const {
  std::optional<Rational> out;
  for (int s : instance_->constraints_containing(bidder, dim)) {
    Rational rem = remaining_capacity(bidder, static_cast<std::size_t>(s));
    if (!out || rem < *out) out = std::move(rem);
  }
  return out;
}

void AllocationState::earn(std::size_t impression, std::size_t bidder, const std::vector<Bid>& amounts) {
  std::map<int, Rational> delta;  // constraint -> added usage
  Assignment entry{impression, bidder, {}};
  for (const Bid& a : amounts) {
    if (a.value.sign() < 0) throw std::invalid_argument("negative earned amount");
    if (a.value.is_zero()) continue;
    for (int s : instance_->constraints_containing(bidder, a.dim)) delta[s] += a.value;
    entry.earned.push_back(a);
  }
  for (const auto& [s, add] : delta) {
    const auto& con = instance_->bidder(bidder).constraints[static_cast<std::size_t>(s)];
    if (used_[bidder][static_cast<std::size_t>(s)] + add > con.budget) {
      throw BudgetOverflow("budget overflow: bidder '" + instance_->bidder(bidder).id +
                           "' constraint '" + con.id + "'");
    }
  }
  for (const auto& [s, add] : delta) used_[bidder][static_cast<std::size_t>(s)] += add;
  for (const Bid& a : entry.earned) {
    if (a.dim >= 0 && static_cast<std::size_t>(a.dim) < earned_[bidder].size()) {
      earned_[bidder][static_cast<std::size_t>(a.dim)] += a.value;
    }
    primal_ += a.value;
  }
  log_.push_back(std::move(entry));
}

void AllocationState::reject(std::size_t impression) {
  log_.push_back(Assignment{impression, std::nullopt, {}});
}

Rational AllocationState::recompute_primal() const {
  Rational total;
  for (const Assignment& a : log_) {
    for (const Bid& b : a.earned) total += b.value;
  }
  return total;
}

}  // namespace adwords
