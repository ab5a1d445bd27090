#include "adwords/duals.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace adwords {

double gamma_of(const Rational& g) {
  return std::expm1(g.to_double()) / (std::numbers::e - 1.0);
}

double gamma_term(const std::vector<double>& gamma, const Instance& instance, std::size_t bidder,
                  const LaminarForest& forest) {
  double total = 0;
  const auto& cons = instance.bidder(bidder).constraints;
  for (std::size_t s = 0; s < cons.size(); ++s) {
    const int p = forest.parent(static_cast<int>(s));
    const double above = p < 0 ? 0.0 : gamma[static_cast<std::size_t>(p)];
    total += cons[s].budget.to_double() * (gamma[s] - above);
  }
  return total;
}

double dual_prime_objective(const DualPrime& dual, const Instance& instance,
                            std::span<const LaminarForest> forests) {
  double total = 0;
  for (double s : dual.sigma) total += s;
  for (std::size_t u = 0; u < instance.num_bidders(); ++u) {
    total += gamma_term(dual.gamma[u], instance, u, forests[u]);
  }
  return total;
}

AuditResult audit_ratio(const Rational& primal, double dual_objective, double tolerance) {
  const double p = primal.to_double();
  const double bound = kRho * p * (1.0 + tolerance) + tolerance * std::max(1.0, p);
  AuditResult out;
  out.residual = (dual_objective - kRho * p) / std::max(1.0, kRho * p);
  out.pass = dual_objective <= bound;
  if (!out.pass) {
    out.detail = "dual " + std::to_string(dual_objective) + " exceeds rho * primal " + std::to_string(kRho * p);
  }
  return out;
}

FeasibilityAudit audit_feasibility_dprime(const DualPrime& dual, const Instance& instance,
                                          std::span<const Impression> impressions,
                                          std::span<const LaminarForest> forests, double tolerance) {
  FeasibilityAudit out;
  double worst = -std::numeric_limits<double>::infinity();
  auto note = [&](double residual, const std::string& where) {
    if (residual > worst) {
      worst = residual;
      out.worst = where;
    }
  };
  const bool brute = instance.num_dimensions() <= 12;
  out.brute_forced = brute;

  for (std::size_t u = 0; u < instance.num_bidders(); ++u) {
    const LaminarForest& forest = forests[u];
    const auto& gamma = dual.gamma[u];
    for (std::size_t s = 0; s < forest.size(); ++s) {
      const int p = forest.parent(static_cast<int>(s));
      if (p >= 0) {
        note(gamma[static_cast<std::size_t>(p)] - gamma[s],
             "monotonicity at '" + instance.bidder(u).constraints[s].id + "'");
      }
    }
    for (std::size_t v = 0; v < impressions.size(); ++v) {
      const auto row = impressions[v].bids_of(u);
      if (row.empty()) continue;
      const double sigma = v < dual.sigma.size() ? dual.sigma[v] : 0.0;
      std::vector<double> r(row.size());
      std::vector<double> gk(row.size());
      double need = 0;
      double scale = 0;
      for (std::size_t i = 0; i < row.size(); ++i) {
        r[i] = row[i].value.to_double();
        const int leaf = forest.singleton_of(row[i].dim);
        gk[i] = leaf < 0 ? 0.0 : gamma[static_cast<std::size_t>(leaf)];
        if (gk[i] < 1.0) {
          need += (1.0 - gk[i]) * r[i];
          scale += r[i];
        }
      }
      const double residual = (need - sigma) / std::max(1.0, scale);
      note(residual, "impression '" + impressions[v].id + "' bidder '" + instance.bidder(u).id + "'");
      if (brute && row.size() <= 12) {
        double best = -std::numeric_limits<double>::infinity();
        for (std::size_t mask = 0; mask < (std::size_t{1} << row.size()); ++mask) {
          double lhs = sigma;
          double rhs = 0;
          for (std::size_t i = 0; i < row.size(); ++i) {
            if ((mask >> i) & 1U) {
              lhs += gk[i] * r[i];
              rhs += r[i];
            }
          }
          best = std::max(best, rhs - lhs);
        }
        const double shortcut = need - sigma;
        if (std::abs(best - std::max(shortcut, -sigma)) > 1e-12 * std::max(1.0, scale + sigma)) {
          out.brute_force_agrees = false;
        }
      }
    }
  }
  out.worst_residual = std::isfinite(worst) ? worst : 0.0;
  out.pass = out.worst_residual <= tolerance && out.brute_force_agrees;
  return out;
}

DualFit greedy_dual_fit(std::span<const Rational> earned_per_impression,
                        const std::vector<std::vector<bool>>& tight,
                        std::span<const LaminarForest> forests) {
  DualFit fit;
  fit.sigma.assign(earned_per_impression.begin(), earned_per_impression.end());
  fit.alpha.resize(tight.size());
  for (std::size_t u = 0; u < tight.size(); ++u) {
    fit.alpha[u].assign(tight[u].size(), 0);
    for (std::size_t s = 0; s < tight[u].size(); ++s) {
      if (!tight[u][s]) continue;
      bool ancestor_tight = false;
      for (int a : forests[u].ancestors(static_cast<int>(s))) {
        if (a != static_cast<int>(s) && tight[u][static_cast<std::size_t>(a)]) ancestor_tight = true;
      }
      fit.alpha[u][s] = ancestor_tight ? 0 : 1;
    }
  }
  return fit;
}

DualFitAudit audit_dualfit(const DualFit& dual, const Instance& instance,
                           std::span<const Impression> impressions, const Rational& primal) {
  DualFitAudit out;
  bool any = false;
  for (std::size_t u = 0; u < instance.num_bidders(); ++u) {
    const auto& cons = instance.bidder(u).constraints;
    for (std::size_t s = 0; s < cons.size(); ++s) {
      if (dual.alpha[u][s] != 0) out.objective += cons[s].budget;
    }
  }
  for (const Rational& s : dual.sigma) out.objective += s;
  for (std::size_t v = 0; v < impressions.size(); ++v) {
    const Rational sigma = v < dual.sigma.size() ? dual.sigma[v] : Rational(0);
    for (std::size_t u = 0; u < instance.num_bidders(); ++u) {
      const auto row = impressions[v].bids_of(u);
      if (row.empty()) continue;
      Rational lhs = sigma;
      Rational rhs;
      for (const Bid& b : row) {
        rhs += b.value;
        for (int s : instance.constraints_containing(u, b.dim)) {
          if (dual.alpha[u][static_cast<std::size_t>(s)] != 0) lhs += b.value;
        }
      }
      const Rational slack = lhs - rhs;
      if (!any || slack < out.worst_slack) {
        out.worst_slack = slack;
        if (slack.sign() < 0) {
          out.detail = "impression '" + impressions[v].id + "' bidder '" + instance.bidder(u).id +
                       "' short by " + (-slack).str();
        }
      }
      any = true;
    }
  }
  out.feasible = out.worst_slack.sign() >= 0;
  out.ratio_ok = out.objective <= Rational(2) * primal;
  if (!out.ratio_ok) out.detail += (out.detail.empty() ? "" : "; ") + std::string("dual objective above 2x primal");
  return out;
}

double lg_2p2(int p) { return std::log2(2.0 * std::max(p, 1) + 2.0); }

AuditResult adgeneral_ratio_bound(const Rational& primal, double opt_value, int p) {
  const double factor = 1.0 + 4.0 * lg_2p2(p);
  const double bound = factor * primal.to_double();
  AuditResult out;
  out.pass = opt_value <= bound * (1.0 + 1e-6);
  out.residual = bound > 0 ? opt_value / bound - 1.0 : opt_value;
  if (!out.pass) out.detail = "OPT " + std::to_string(opt_value) + " above " + std::to_string(bound);
  return out;
}

}  // namespace adwords
