#pragma once

#include <optional>
#include <string>
#include <vector>

#include "adwords/instance.hpp"
#include "adwords/session.hpp"

namespace adwords {

/// Admission-control reduction on a line of n edges: one bidder, one budget-1
/// constraint per edge, one dimension per request group. Group j of phase i
/// covers edges [j·n/2^i, (j+1)·n/2^i) and is dimension 2^i − 1 + j.
Instance admission_skeleton(int n);

/// 1 / (n·⌈lg(2n+2)⌉·4).
Rational admission_default_delta(int n);

struct AdmissionResult {
  Instance transcript;
  Rational alg_revenue;
  Rational opt_analytic;
  /// Revenue earned per phase.
  std::vector<Rational> x;
  int stop_phase = -1;
  /// Σ_i 2^{−i}·x_i.
  Rational weighted_sum;
  int p = 0;
  std::vector<std::string> notes;
};

/// Feeds phases 0, 1, … to a session built on admission_skeleton(n) and stops
/// after the first phase k with 2^{−k}·Σ_{i≤k} x_i <= 2 / lg n. Each group is
/// 1/δ requests of demand δ, or a single request of demand 1 in unit mode.
AdmissionResult run_admission_lb(Session& session, int n, const Rational& delta, bool unit_requests = false);

/// Builds the skeleton and session, then runs the adversary.
AdmissionResult run_admission_lb(Strategy strategy, int n, std::optional<Rational> delta = std::nullopt,
                                 bool unit_requests = false, SessionOptions options = {});

/// Hierarchical all-or-nothing construction: p budget-1 constraints, ℓ =
/// (1−ε)/ε levels, branching b = p^{1/ℓ}. Dimension 0 is the initial δ
/// impression; every (level, segment) owns one further dimension shared by the
/// segment's constraints. Throws std::invalid_argument unless ℓ and b are
/// integers with b >= 2.
Instance aon_skeleton(int p, const Rational& eps);

struct AonSegmentCheck {
  int level = 0;
  int segment = 0;
  Rational revenue;  // redistributed, δ excluded
  Rational delta_share;
  bool within_bound = true;
};

struct AonResult {
  Instance transcript;
  Rational alg_revenue;
  Rational opt_analytic;
  int ell = 0;
  int branching = 0;
  bool delta_accepted = false;
  /// Every checked active segment had utilization ε·i + δ on all its
  /// constraints (δ counted when it was accepted).
  bool utilization_lemma_holds = true;
  int segments_checked = 0;
  std::vector<AonSegmentCheck> cells;
  bool segment_bound_holds = true;
  std::vector<std::string> notes;
};

AonResult run_aon_lb(Session& session, int p, const Rational& eps, const Rational& delta);
AonResult run_aon_lb(Strategy strategy, int p, const Rational& eps, const Rational& delta,
                     SessionOptions options = {});

struct SharedDimScenarios {
  Instance a;
  Instance b;
  Instance a_small;
  Instance b_small;
};

/// One bidder with budget 1 on dims {0,1} and budget 1 on {1,2}. A: a unit
/// impression on dim 1, then on dim 0, then on dim 2. B: only the first. The
/// small variants split every unit impression into 1/δ impressions of δ.
SharedDimScenarios shared_dim_scenarios(const Rational& delta = Rational(1, 20));

}  // namespace adwords
