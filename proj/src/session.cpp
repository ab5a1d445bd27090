#include "adwords/session.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "adwords/errors.hpp"

namespace adwords {

std::string_view to_string(SigmaRule rule) {
  switch (rule) {
    case SigmaRule::ScoreAtArrival: return "score-at-arrival";
    case SigmaRule::ExactIncrement: return "exact-increment";
    case SigmaRule::CoveringMinimum: return "covering-minimum";
  }
  return "?";
}

std::optional<SigmaRule> parse_sigma_rule(std::string_view name) {
  if (name == "score-at-arrival") return SigmaRule::ScoreAtArrival;
  if (name == "exact-increment") return SigmaRule::ExactIncrement;
  if (name == "covering-minimum") return SigmaRule::CoveringMinimum;
  return std::nullopt;
}

std::string_view to_string(AuditMode mode) {
  switch (mode) {
    case AuditMode::Off: return "off";
    case AuditMode::End: return "end";
    case AuditMode::Paranoid: return "paranoid";
  }
  return "?";
}

std::optional<AuditMode> parse_audit_mode(std::string_view name) {
  if (name == "off") return AuditMode::Off;
  if (name == "end") return AuditMode::End;
  if (name == "paranoid") return AuditMode::Paranoid;
  return std::nullopt;
}

namespace {

// Whether adding `amounts` keeps every constraint of `bidder` within budget.
bool fits(const AllocationState& state, std::size_t bidder, const std::vector<Bid>& amounts) {
  std::map<int, Rational> delta;
  for (const Bid& a : amounts) {
    for (int s : state.instance().constraints_containing(bidder, a.dim)) delta[s] += a.value;
  }
  for (const auto& [s, add] : delta) {
    if (add > state.remaining_capacity(bidder, static_cast<std::size_t>(s))) return false;
  }
  return true;
}

// Earn each amount in dim order up to the capacity left by the earlier ones.
std::vector<Bid> cap_sequentially(const AllocationState& state, std::size_t bidder,
                                  const std::vector<Bid>& amounts, bool& capped) {
  std::map<int, Rational> extra;
  std::vector<Bid> out;
  for (const Bid& a : amounts) {
    Rational take = a.value;
    for (int s : state.instance().constraints_containing(bidder, a.dim)) {
      take = min(take, state.remaining_capacity(bidder, static_cast<std::size_t>(s)) - extra[s]);
    }
    if (take.sign() < 0) take = Rational(0);
    if (take != a.value) capped = true;
    if (take.is_zero()) continue;
    for (int s : state.instance().constraints_containing(bidder, a.dim)) extra[s] += take;
    out.push_back(Bid{a.dim, take});
  }
  return out;
}

Rational total_of(const std::vector<Bid>& bids) {
  Rational t;
  for (const Bid& b : bids) t += b.value;
  return t;
}

}  // namespace

Session::Session(const Instance& instance, Strategy strategy, SessionOptions options)
    : instance_(&instance), strategy_(strategy), options_(std::move(options)), state_(instance) {
  if (requires_laminar(strategy) && instance.mode() != Mode::Laminar) {
    throw ValidationError({std::string(to_string(strategy)) + " requires a laminar instance"});
  }
  if (!options_.p || !options_.eps) {
    const InstanceStats stats = instance_stats(instance);
    p_ = options_.p.value_or(stats.p);
    eps_ = options_.eps.value_or(stats.eps);
  } else {
    p_ = *options_.p;
    eps_ = *options_.eps;
  }
  small_bids_ok_ = eps_ <= Rational::from_double(small_bids_threshold(p_));
  const int p = std::max(p_, 1);

  switch (strategy) {
    case Strategy::AdLaminar:
    case Strategy::GreedyLaminar:
      forests_ = build_forests(instance);
      if (strategy == Strategy::AdLaminar) {
        for (std::size_t u = 0; u < forests_.size(); ++u) {
          labels_.emplace_back(forests_[u]);
          last_labels_.emplace_back(forests_[u].size(), Rational(0));
        }
        gamma_terms_.assign(instance.num_bidders(), 0.0);
      }
      break;
    case Strategy::AdGeneral:
      potential_.emplace(PotentialState::Kind::General, p);
      break;
    case Strategy::AdGenAon:
      if (eps_ >= Rational(1)) {
        throw ValidationError({"adgen-aon requires a bid-to-budget ratio below 1, got " + eps_.str()});
      }
      potential_.emplace(PotentialState::Kind::AllOrNothing, p, eps_.to_double());
      break;
    case Strategy::AdGenP: {
      const double scaled_eps = 1.0 / lg_2p2(p);
      potential_.emplace(PotentialState::Kind::AllOrNothing, p, scaled_eps);
      earn_scale_ = scaled_eps;
      if (eps_ >= Rational(1)) warn("bid-to-budget ratio " + eps_.str() + " is not below 1");
      break;
    }
  }
  if ((strategy == Strategy::AdLaminar || strategy == Strategy::AdGeneral) && !small_bids_ok_) {
    warn("small-bids assumption violated: eps = " + eps_.decimal_str(6) + " above 1/lg(2p+2) with p = " +
         std::to_string(p_));
  }
}

void Session::warn(std::string message) {
  if (warnings_.size() < 100) {
    warnings_.push_back(std::move(message));
  } else {
    ++suppressed_;
  }
}

Decision Session::offer(const Impression& impression) {
  const std::size_t v = offered_.size();
  offered_.push_back(impression);
  offered_.back().bids.resize(instance_->num_bidders());
  const Impression& imp = offered_.back();

  Decision d;
  switch (strategy_) {
    case Strategy::AdLaminar: d = step_adlaminar(imp, v); break;
    case Strategy::GreedyLaminar: d = step_greedy(imp, v); break;
    default: d = step_potential(imp, v); break;
  }
  d.index = v;
  d.impression_id = imp.id;
  if (options_.audit == AuditMode::Paranoid) paranoid_checks(d, v);
  decisions_.push_back(d);
  if (options_.on_decision) options_.on_decision(decisions_.back());
  return d;
}

std::vector<double> Session::gammas(std::size_t bidder) const {
  const LabelState& labels = labels_[bidder];
  std::vector<double> out(forests_[bidder].size());
  for (std::size_t s = 0; s < out.size(); ++s) out[s] = gamma_of(labels.g_value(static_cast<int>(s)));
  return out;
}

DualPrime Session::dual_prime() const {
  DualPrime dual;
  dual.sigma = sigma_;
  for (std::size_t u = 0; u < labels_.size(); ++u) {
    dual.gamma.push_back(gammas(u));
    std::vector<Rational> g;
    for (std::size_t s = 0; s < forests_[u].size(); ++s) g.push_back(labels_[u].g_value(static_cast<int>(s)));
    dual.g.push_back(std::move(g));
  }
  return dual;
}

double Session::dual_objective() const {
  double total = sigma_sum_;
  for (double g : gamma_terms_) total += g;
  return total;
}

double Session::covering_requirement(const Impression& imp) const {
  double need = 0;
  for (std::size_t u = 0; u < instance_->num_bidders(); ++u) {
    double sum = 0;
    for (const Bid& b : imp.bids_of(u)) {
      const int s = forests_[u].singleton_of(b.dim);
      const double gamma = s < 0 ? 0.0 : gamma_of(labels_[u].g_value(s));
      if (gamma < 1) sum += (1 - gamma) * b.value.to_double();
    }
    need = std::max(need, sum);
  }
  return need;
}

Decision Session::step_adlaminar(const Impression& imp, std::size_t v) {
  Decision d;
  const std::size_t n = instance_->num_bidders();
  d.scores.assign(n, 0.0);
  std::optional<std::size_t> best;
  std::vector<std::vector<Bid>> active_bids(n);
  for (std::size_t u = 0; u < n; ++u) {
    for (const Bid& b : imp.bids_of(u)) {
      bool active = forests_[u].singleton_of(b.dim) >= 0;
      for (int s : instance_->constraints_containing(u, b.dim)) {
        if (state_.is_tight(u, static_cast<std::size_t>(s))) active = false;
      }
      if (active) active_bids[u].push_back(b);
    }
    d.scores[u] = adlaminar_score(state_, labels_[u], u, imp);
    if (active_bids[u].empty()) continue;
    if (!best || d.scores[u] > d.scores[*best]) best = u;
  }
  if (!best) {
    state_.reject(v);
    sigma_.push_back(0.0);
    d.dual_objective = dual_objective();
    return d;
  }
  const std::size_t u = *best;
  const double sigma_arrival = kRho * d.scores[u];

  std::vector<Bid> amounts = cap_sequentially(state_, u, active_bids[u], d.capped);
  if (d.capped) warn("impression '" + imp.id + "': earnings capped at remaining capacity");
  state_.earn(v, u, amounts);
  for (const Bid& a : amounts) {
    auto events = labels_[u].increment_revenue(a.dim, a.value);
    d.events.insert(d.events.end(), events.begin(), events.end());
  }
  d.bidder = u;
  d.earned = amounts;
  d.earned_total = total_of(amounts);

  const double before = gamma_terms_[u];
  gamma_terms_[u] = gamma_term(gammas(u), *instance_, u, forests_[u]);
  double sigma = sigma_arrival;
  if (options_.sigma_rule == SigmaRule::ExactIncrement) {
    sigma = kRho * d.earned_total.to_double() - (gamma_terms_[u] - before);
  } else if (options_.sigma_rule == SigmaRule::CoveringMinimum) {
    sigma = covering_requirement(imp);
  }
  d.sigma = sigma;
  sigma_.push_back(sigma);
  sigma_sum_ += sigma;
  d.dual_objective = dual_objective();
  return d;
}

Decision Session::step_potential(const Impression& imp, std::size_t v) {
  Decision d;
  const std::size_t n = instance_->num_bidders();
  d.scores.assign(n, 0.0);
  std::vector<std::vector<Bid>> active_bids(n);
  std::optional<std::size_t> best;
  Rational best_total;
  for (std::size_t u = 0; u < n; ++u) {
    Rational total;
    for (const Bid& b : imp.bids_of(u)) {
      if (!potential_->is_active(state_, u, b.dim)) continue;
      active_bids[u].push_back(b);
      total += b.value;
    }
    d.scores[u] = total.to_double();
    if (total.sign() > 0 && (!best || total > best_total)) {
      best = u;
      best_total = total;
    }
  }
  if (!best) {
    state_.reject(v);
    return d;
  }
  const std::size_t u = *best;
  std::vector<Bid> amounts = active_bids[u];
  if (strategy_ == Strategy::AdGenP) {
    const Rational scale = Rational::from_double(earn_scale_);
    for (Bid& a : amounts) a.value = (a.value * scale).truncate_to_denominator_bits(40);
  }
  if (!fits(state_, u, amounts)) {
    const std::string where = "impression '" + imp.id + "' for bidder '" + instance_->bidder(u).id + "'";
    const bool lemma_applies = strategy_ == Strategy::AdGeneral ? small_bids_ok_ : eps_ < Rational(1);
    if (lemma_applies) throw FeasibilityLemmaViolated("feasibility lemma violated at " + where);
    if (strategy_ == Strategy::AdGenAon) {
      warn(where + " does not fit; rejected");
      state_.reject(v);
      return d;
    }
    amounts = cap_sequentially(state_, u, amounts, d.capped);
    warn("earnings capped at remaining capacity: " + where);
  }
  state_.earn(v, u, amounts);
  d.bidder = u;
  d.earned = amounts;
  d.earned_total = total_of(amounts);
  return d;
}

Decision Session::step_greedy(const Impression& imp, std::size_t v) {
  Decision d;
  const std::size_t n = instance_->num_bidders();
  d.scores.assign(n, 0.0);
  std::optional<std::size_t> best;
  Rational best_total;
  std::vector<Bid> best_amounts;
  for (std::size_t u = 0; u < n; ++u) {
    std::vector<Bid> amounts = max_earnable_laminar(state_, forests_[u], u, imp);
    const Rational total = total_of(amounts);
    d.scores[u] = total.to_double();
    if (total.sign() > 0 && (!best || total > best_total)) {
      best = u;
      best_total = total;
      best_amounts = std::move(amounts);
    }
  }
  if (!best) {
    state_.reject(v);
    return d;
  }
  state_.earn(v, *best, best_amounts);
  d.bidder = *best;
  d.earned = std::move(best_amounts);
  d.earned_total = best_total;
  d.sigma = best_total.to_double();
  return d;
}

void Session::paranoid_checks(const Decision& d, std::size_t v) {
  if (state_.recompute_primal() != state_.primal_total()) {
    throw InvariantViolation("primal total disagrees with the assignment log");
  }
  if (strategy_ != Strategy::AdLaminar || !d.bidder) return;
  const std::size_t u = *d.bidder;
  if (auto problems = labels_[u].check_properties(); !problems.empty()) {
    throw InvariantViolation("label properties fail after impression '" + d.impression_id + "': " +
                             problems.front());
  }
  for (std::size_t s = 0; s < forests_[u].size(); ++s) {
    Rational now = labels_[u].label(static_cast<int>(s));
    if (now < last_labels_[u][s]) {
      throw InvariantViolation("label of '" + forests_[u].id(static_cast<int>(s)) + "' decreased");
    }
    last_labels_[u][s] = std::move(now);
  }
  const AuditResult ratio = audit_ratio(state_.primal_total(), dual_objective(), options_.tolerance);
  if (!ratio.pass) warn("after impression " + std::to_string(v) + ": " + ratio.detail);
  const FeasibilityAudit feas =
      audit_feasibility_dprime(dual_prime(), *instance_, offered_, forests_, options_.tolerance);
  if (!feas.pass) {
    warn("after impression " + std::to_string(v) + ": D' infeasible by " + std::to_string(feas.worst_residual) +
         " at " + feas.worst);
  }
}

}  // namespace adwords
