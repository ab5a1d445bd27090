#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "adwords/allocation_state.hpp"
#include "adwords/duals.hpp"
#include "adwords/instance.hpp"
#include "adwords/labels.hpp"
#include "adwords/laminar_forest.hpp"
#include "adwords/strategies.hpp"

namespace adwords {

/// How AdLaminar records σ_v.
enum class SigmaRule {
  /// ρ·D_uv with the score taken at arrival.
  ScoreAtArrival,
  /// ρ·ΔP − ΔΓ: the exact discrete increase of the γ part of the dual is
  /// charged against ρ times the revenue earned.
  ExactIncrement,
  /// Smallest σ satisfying every bidder's covering constraint at the
  /// post-assignment γ: max_u Σ_{k: γ({k})<1} (1 − γ({k}))·r_u(k).
  CoveringMinimum,
};

std::string_view to_string(SigmaRule rule);
std::optional<SigmaRule> parse_sigma_rule(std::string_view name);

enum class AuditMode { Off, End, Paranoid };

std::string_view to_string(AuditMode mode);
std::optional<AuditMode> parse_audit_mode(std::string_view name);

struct Decision {
  std::size_t index = 0;  // arrival position
  std::string impression_id;
  std::optional<std::size_t> bidder;
  std::vector<Bid> earned;
  Rational earned_total;
  /// Per-bidder selection score (D_uv, active bid sum, or earnable total).
  std::vector<double> scores;
  /// AdLaminar: recorded σ_v. Greedy: R_v. Others: 0.
  double sigma = 0;
  /// AdLaminar only: D′ objective after this impression.
  double dual_objective = 0;
  bool capped = false;
  std::vector<LabelEvent> events;
};

struct SessionOptions {
  SigmaRule sigma_rule = SigmaRule::CoveringMinimum;
  AuditMode audit = AuditMode::End;
  /// Overrides for p and ε when the instance holds only a skeleton (adaptive
  /// adversaries); otherwise both come from instance_stats.
  std::optional<int> p;
  std::optional<Rational> eps;
  double tolerance = 1e-9;
  std::function<void(const Decision&)> on_decision;
};

/// One online run: offer() each impression exactly once, in arrival order.
class Session {
 public:
  /// Throws ValidationError if `strategy` needs a laminar instance.
  Session(const Instance& instance, Strategy strategy, SessionOptions options = {});

  Session(const Session&) = delete;
  Session& operator=(const Session&) = delete;

  Decision offer(const Impression& impression);

  const Instance& instance() const { return *instance_; }
  Strategy strategy() const { return strategy_; }
  const SessionOptions& options() const { return options_; }
  const AllocationState& state() const { return state_; }
  const std::vector<Impression>& impressions() const { return offered_; }
  const std::vector<Decision>& decisions() const { return decisions_; }
  /// At most 100 messages are kept; the rest are counted.
  const std::vector<std::string>& warnings() const { return warnings_; }
  std::size_t suppressed_warnings() const { return suppressed_; }
  int p() const { return p_; }
  const Rational& eps() const { return eps_; }
  bool small_bids_ok() const { return small_bids_ok_; }

  const std::vector<LaminarForest>& forests() const { return forests_; }
  const LabelState& labels(std::size_t bidder) const { return labels_.at(bidder); }
  const std::optional<PotentialState>& potential() const { return potential_; }

  /// Current D′ solution (laminar strategies only).
  DualPrime dual_prime() const;
  double dual_objective() const;

  void warn(std::string message);

 private:
  Decision step_adlaminar(const Impression& imp, std::size_t v);
  Decision step_potential(const Impression& imp, std::size_t v);
  Decision step_greedy(const Impression& imp, std::size_t v);
  std::vector<double> gammas(std::size_t bidder) const;
  double covering_requirement(const Impression& imp) const;
  void paranoid_checks(const Decision& d, std::size_t v);

  const Instance* instance_;
  Strategy strategy_;
  SessionOptions options_;
  AllocationState state_;
  std::vector<Impression> offered_;
  std::vector<Decision> decisions_;
  std::vector<std::string> warnings_;
  std::size_t suppressed_ = 0;
  int p_ = 1;
  Rational eps_;
  bool small_bids_ok_ = true;
  double earn_scale_ = 1.0;

  std::vector<LaminarForest> forests_;
  std::vector<LabelState> labels_;
  std::vector<double> sigma_;
  double sigma_sum_ = 0;
  std::vector<double> gamma_terms_;
  std::vector<std::vector<Rational>> last_labels_;
  std::optional<PotentialState> potential_;
};

}  // namespace adwords
