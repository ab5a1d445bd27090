#pragma once

#include <optional>
#include <string>
#include <vector>

#include "adwords/duals.hpp"
#include "adwords/session.hpp"

namespace adwords {

struct Report {
  Strategy strategy = Strategy::AdGeneral;
  SigmaRule sigma_rule = SigmaRule::CoveringMinimum;
  int p = 0;
  Rational eps;
  bool small_bids_ok = true;

  Rational primal;
  std::vector<Decision> decisions;
  /// κ per (bidder, constraint) at the end.
  std::vector<std::vector<Rational>> utilization;

  /// Laminar primal-dual: D′ objective and dual / primal.
  std::optional<double> dual_objective;
  std::optional<double> ratio;
  std::optional<AuditResult> ratio_audit;
  std::optional<FeasibilityAudit> feasibility;
  /// Greedy: natural-dual certificate.
  std::optional<DualFitAudit> dual_fit;

  std::vector<std::string> warnings;
  /// End-of-run audit failures.
  std::vector<std::string> audit_failures;

  bool audit_failed() const { return !audit_failures.empty(); }
};

/// Feeds the instance's impressions in order and runs the end-of-run audits
/// requested by `options.audit`. Audit failures are recorded, not thrown;
/// invariant violations found by paranoid checks are thrown.
Report run_online(const Instance& instance, Strategy strategy, SessionOptions options = {});

/// Builds the report of a finished session, running end-of-run audits unless
/// the session's audit mode is Off.
Report finish_report(const Session& session);

/// {"primal": "p/q", "dual_objective": number|null, "ratio": number|null,
///  "feasibility": {"worst_residual": number, "pass": bool}, "warnings": [...], ...}
std::string report_json(const Report& report);

/// Per-impression CSV: impression, bidder, earned (decimal and p/q), sigma,
/// dual objective.
std::string trace_csv(const Report& report, const Instance& instance);

/// OPT / ALG with the conventions +inf for ALG = 0 < OPT and 1 for 0 / 0.
double competitive_ratio(double opt, double alg);

}  // namespace adwords
