#pragma once

#include <numbers>
#include <span>
#include <string>
#include <vector>

#include "adwords/instance.hpp"
#include "adwords/laminar_forest.hpp"

namespace adwords {

/// e / (e − 1).
inline constexpr double kRho = std::numbers::e / (std::numbers::e - 1.0);

/// γ = (e^g − 1) / (e − 1).
double gamma_of(const Rational& g);

/// Telescoped dual: σ per offered impression, γ per (bidder, constraint), and
/// the exact g values γ was computed from.
struct DualPrime {
  std::vector<double> sigma;
  std::vector<std::vector<double>> gamma;
  std::vector<std::vector<Rational>> g;
};

/// Σ_v σ_v + Σ_u Σ_s B(γ_s − γ_{p(s)}), with γ_{p(root)} = 0.
double dual_prime_objective(const DualPrime& dual, const Instance& instance,
                            std::span<const LaminarForest> forests);

/// B-weighted telescoped γ sum of one bidder.
double gamma_term(const std::vector<double>& gamma, const Instance& instance, std::size_t bidder,
                  const LaminarForest& forest);

struct AuditResult {
  bool pass = true;
  double residual = 0;  // positive means violation, relative
  std::string detail;
};

/// Passes iff dual <= ρ·primal·(1 + tol) + tol·max(1, primal).
AuditResult audit_ratio(const Rational& primal, double dual_objective, double tolerance = 1e-9);

struct FeasibilityAudit {
  bool pass = true;
  /// Max over (u, v) of (Σ_{t*} (1 − γ) r − σ_v) / max(1, Σ_{t*} r), and over
  /// (u, s) of (γ_{p(s)} − γ_s); below zero when everything has slack.
  double worst_residual = 0;
  std::string worst;
  bool brute_forced = false;
  /// The t* shortcut matched the exhaustive scan over t wherever it ran.
  bool brute_force_agrees = true;
};

/// Checks the covering constraint of every (bidder, offered impression) at the
/// worst type t* = {k : γ({k}) < 1} and γ monotonicity toward the leaves.
/// When |K| <= 12, t* is cross-checked against every t.
FeasibilityAudit audit_feasibility_dprime(const DualPrime& dual, const Instance& instance,
                                          std::span<const Impression> impressions,
                                          std::span<const LaminarForest> forests,
                                          double tolerance = 1e-9);

/// Natural-dual certificate for greedy: σ_v = earned R_v; α = 1 on tight
/// constraints with no tight ancestor.
struct DualFit {
  std::vector<Rational> sigma;
  std::vector<std::vector<int>> alpha;
};

/// `tight[u][s]` marks constraints at exactly full capacity.
DualFit greedy_dual_fit(std::span<const Rational> earned_per_impression,
                        const std::vector<std::vector<bool>>& tight,
                        std::span<const LaminarForest> forests);

struct DualFitAudit {
  bool feasible = true;
  bool ratio_ok = true;
  Rational objective;
  /// Min over (u, v) of LHS − RHS; negative means infeasible.
  Rational worst_slack;
  std::string detail;
  bool pass() const { return feasible && ratio_ok; }
};

/// Exact checks: Σ_s α_s Σ_{k∈s} r + σ_v >= Σ_k r for every (u, v), and
/// Σ α·B + Σ σ <= 2·primal.
DualFitAudit audit_dualfit(const DualFit& dual, const Instance& instance,
                           std::span<const Impression> impressions, const Rational& primal);

/// lg(2p + 2), p = 0 treated as 1.
double lg_2p2(int p);

/// Passes iff opt <= (1 + 4·lg(2p+2))·primal·(1 + 1e−6).
AuditResult adgeneral_ratio_bound(const Rational& primal, double opt_value, int p);

}  // namespace adwords
