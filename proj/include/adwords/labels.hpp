#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "adwords/laminar_forest.hpp"
#include "adwords/rational.hpp"

namespace adwords {

/// Shield: s′ joins T(s) (the descendant's label caught up from below).
/// Merge: s′ leaves T(s) and its sets fold into s.
struct LabelEvent {
  enum class Kind { Merge, Shield };
  Kind kind = Kind::Shield;
  int s = -1;
  int s_prime = -1;
  /// Revenue added within the current increment when the event fired.
  Rational offset;

  friend bool operator==(const LabelEvent&, const LabelEvent&) = default;
};

struct Crossing {
  Rational x;
  std::vector<LabelEvent> events;
};

/// Label machine of one bidder: labels ℓ(s) = N_s / D_s with
/// N_s = Σ_{L(s)} R and D_s = B_s − Σ_{T(s)} B. The forest must outlive it.
class LabelState {
 public:
  LabelState() = default;
  /// All labels 0, T(s) empty, L(s) = descendant singletons.
  explicit LabelState(const LaminarForest& forest);

  const LaminarForest& forest() const { return *forest_; }

  /// Throws ZeroDenominator when D_s <= 0.
  Rational label(int s) const;
  /// Max label over the ancestors of s, s included.
  Rational g_value(int s) const;
  const Rational& numerator(int s) const { return num_[idx(s)]; }
  const Rational& denominator(int s) const { return den_[idx(s)]; }
  const std::set<int>& L(int s) const { return L_[idx(s)]; }
  const std::set<int>& T(int s) const { return T_[idx(s)]; }
  /// R(k); zero for dimensions without a singleton node.
  Rational revenue(int dim) const;

  /// Smallest x >= 0 at which some label order changes while R(dim) grows
  /// by x, with every event occurring there.
  std::optional<Crossing> next_crossing(int dim) const;

  /// Throws NotAtTransition if ℓ(s) != ℓ(s′); InvariantViolation if the label
  /// of s moves.
  void apply_event1(int s, int s_prime);
  /// Additionally throws Error if s′ is not in T(s).
  void apply_event2(int s, int s_prime);

  /// Adds `amount` to R(dim), firing events at their exact crossing points.
  /// Returns the events applied.
  std::vector<LabelEvent> increment_revenue(int dim, const Rational& amount);

  /// Violations of the partition invariant and Properties 1–3; empty when
  /// everything holds exactly.
  std::vector<std::string> check_properties() const;

  /// One line per node: "id | p/q | L={…} | T={…}".
  std::string dump() const;

 private:
  static std::size_t idx(int s) { return static_cast<std::size_t>(s); }
  void recompute(int s);
  bool labels_equal(int a, int b) const;
  bool still_valid(const LabelEvent& e, int leaf) const;
  void add_revenue(int leaf, const Rational& x);
  void apply(const LabelEvent& e);

  const LaminarForest* forest_ = nullptr;
  std::vector<std::set<int>> L_;
  std::vector<std::set<int>> T_;
  std::vector<Rational> num_;
  std::vector<Rational> den_;
  std::vector<Rational> revenue_;  // per node; nonzero only on singleton nodes
};

}  // namespace adwords
