#include "adwords/report.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include <json.hpp>

namespace adwords {

using nlohmann::json;

Report finish_report(const Session& session) {
  const Instance& instance = session.instance();
  const AllocationState& state = session.state();
  Report r;
  r.strategy = session.strategy();
  r.sigma_rule = session.options().sigma_rule;
  r.p = session.p();
  r.eps = session.eps();
  r.small_bids_ok = session.small_bids_ok();
  r.primal = state.primal_total();
  r.decisions = session.decisions();
  r.warnings = session.warnings();
  if (session.suppressed_warnings() > 0) {
    r.warnings.push_back(std::to_string(session.suppressed_warnings()) + " further warnings suppressed");
  }
  r.utilization.resize(instance.num_bidders());
  for (std::size_t u = 0; u < instance.num_bidders(); ++u) {
    for (std::size_t s = 0; s < instance.bidder(u).constraints.size(); ++s) {
      r.utilization[u].push_back(state.utilization(u, s));
    }
  }
  if (r.strategy == Strategy::AdLaminar) {
    r.dual_objective = session.dual_objective();
    if (r.primal.sign() > 0) r.ratio = *r.dual_objective / r.primal.to_double();
  }
  if (session.options().audit == AuditMode::Off) return r;

  const double tol = session.options().tolerance;
  if (state.recompute_primal() != r.primal) r.audit_failures.push_back("primal total disagrees with the log");
  if (r.strategy == Strategy::AdLaminar) {
    r.ratio_audit = audit_ratio(r.primal, *r.dual_objective, tol);
    if (!r.ratio_audit->pass) r.audit_failures.push_back("ratio audit: " + r.ratio_audit->detail);
    r.feasibility = audit_feasibility_dprime(session.dual_prime(), instance, session.impressions(),
                                             session.forests(), tol);
    if (!r.feasibility->pass) {
      r.audit_failures.push_back("D' feasibility: residual " + std::to_string(r.feasibility->worst_residual) +
                                 " at " + r.feasibility->worst);
    }
    for (std::size_t u = 0; u < instance.num_bidders(); ++u) {
      for (const auto& problem : session.labels(u).check_properties()) {
        r.audit_failures.push_back("labels of '" + instance.bidder(u).id + "': " + problem);
      }
    }
  } else if (r.strategy == Strategy::GreedyLaminar) {
    std::vector<std::vector<bool>> tight(instance.num_bidders());
    for (std::size_t u = 0; u < instance.num_bidders(); ++u) {
      for (std::size_t s = 0; s < instance.bidder(u).constraints.size(); ++s) {
        tight[u].push_back(state.is_tight(u, s));
      }
    }
    std::vector<Rational> earned;
    for (const Decision& d : r.decisions) earned.push_back(d.earned_total);
    const DualFit fit = greedy_dual_fit(earned, tight, session.forests());
    r.dual_fit = audit_dualfit(fit, instance, session.impressions(), r.primal);
    if (r.primal.sign() > 0) r.ratio = r.dual_fit->objective.to_double() / r.primal.to_double();
    if (!r.dual_fit->pass()) r.audit_failures.push_back("dual fit: " + r.dual_fit->detail);
  }
  return r;
}

Report run_online(const Instance& instance, Strategy strategy, SessionOptions options) {
  Session session(instance, strategy, std::move(options));
  for (const Impression& imp : instance.impressions()) session.offer(imp);
  return finish_report(session);
}

namespace {

json number_or_null(const std::optional<double>& x) {
  if (!x || !std::isfinite(*x)) return nullptr;
  return *x;
}

}  // namespace

std::string report_json(const Report& r) {
  json doc = json::object();
  doc["strategy"] = std::string(to_string(r.strategy));
  if (r.strategy == Strategy::AdLaminar) doc["sigma_rule"] = std::string(to_string(r.sigma_rule));
  doc["p"] = r.p;
  doc["eps"] = r.eps.str();
  doc["small_bids_ok"] = r.small_bids_ok;
  doc["primal"] = r.primal.str();
  doc["primal_decimal"] = r.primal.decimal_str();
  doc["dual_objective"] = number_or_null(r.dual_objective);
  doc["ratio"] = number_or_null(r.ratio);
  json feas = {{"evaluated", r.feasibility.has_value()}, {"worst_residual", 0.0}, {"pass", true}};
  if (r.feasibility) {
    feas["worst_residual"] = r.feasibility->worst_residual;
    feas["pass"] = r.feasibility->pass;
    feas["worst_at"] = r.feasibility->worst;
    feas["brute_force_checked"] = r.feasibility->brute_forced;
    feas["brute_force_agrees"] = r.feasibility->brute_force_agrees;
  }
  doc["feasibility"] = std::move(feas);
  if (r.ratio_audit) doc["ratio_audit"] = {{"pass", r.ratio_audit->pass}, {"residual", r.ratio_audit->residual}};
  if (r.dual_fit) {
    doc["dual_fit"] = {{"feasible", r.dual_fit->feasible},
                       {"ratio_ok", r.dual_fit->ratio_ok},
                       {"objective", r.dual_fit->objective.str()},
                       {"worst_slack", r.dual_fit->worst_slack.str()}};
  }
  std::size_t assigned = 0;
  for (const Decision& d : r.decisions) assigned += d.bidder ? 1 : 0;
  doc["impressions"] = r.decisions.size();
  doc["assigned"] = assigned;
  doc["warnings"] = r.warnings;
  doc["audit_failures"] = r.audit_failures;
  json util = json::array();
  for (const auto& row : r.utilization) {
    json jr = json::array();
    for (const Rational& k : row) jr.push_back(k.str());
    util.push_back(std::move(jr));
  }
  doc["utilization"] = std::move(util);
  return doc.dump(2) + "\n";
}

std::string trace_csv(const Report& r, const Instance& instance) {
  std::ostringstream os;
  os << "impression,bidder,earned,earned_exact,sigma,dual_objective\n";
  os.precision(17);
  for (const Decision& d : r.decisions) {
    os << d.impression_id << ',' << (d.bidder ? instance.bidder(*d.bidder).id : std::string("-")) << ','
       << d.earned_total.decimal_str() << ',' << d.earned_total.fraction_str() << ',' << d.sigma << ','
       << d.dual_objective << '\n';
  }
  return os.str();
}

double competitive_ratio(double opt, double alg) {
  if (alg <= 0) return opt <= 0 ? 1.0 : std::numeric_limits<double>::infinity();
  return opt / alg;
}

}  // namespace adwords
