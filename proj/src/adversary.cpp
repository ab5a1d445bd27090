#include "adwords/adversary.hpp"

#include <stdexcept>

#include "adwords/errors.hpp"

namespace adwords {

namespace {

int exact_log2(int n) {
  int k = 0;
  while ((1 << k) < n) ++k;
  return k;
}

bool is_power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

Impression single_bid(std::string id, std::size_t bidders, int dim, Rational value) {
  Impression imp;
  imp.id = std::move(id);
  imp.bids.resize(bidders);
  imp.bids[0].push_back(Bid{dim, std::move(value)});
  return imp;
}

}  // namespace

Instance admission_skeleton(int n) {
  if (!is_power_of_two(n) || n < 4) throw std::invalid_argument("admission n must be a power of two >= 4");
  const int phases = exact_log2(n) + 1;
  Bidder bidder{"line", {}};
  for (int e = 0; e < n; ++e) {
    BudgetConstraint c{"e" + std::to_string(e), {}, Rational(1)};
    for (int i = 0; i < phases; ++i) {
      const int len = n >> i;
      c.dims.push_back((1 << i) - 1 + e / len);
    }
    bidder.constraints.push_back(std::move(c));
  }
  return Instance(Mode::General, 2 * n - 1, {std::move(bidder)}, {});
}

Rational admission_default_delta(int n) {
  const int ceil_lg = exact_log2(2 * n + 2);
  return Rational(1, static_cast<long>(n) * ceil_lg * 4);
}

AdmissionResult run_admission_lb(Session& session, int n, const Rational& delta, bool unit_requests) {
  const Instance& skeleton = session.instance();
  const int lg_n = exact_log2(n);
  const Rational per_group = unit_requests ? Rational(1) : Rational(1) / delta;
  if (!unit_requests && !per_group.is_integer()) throw std::invalid_argument("1/delta must be an integer");
  const long copies = unit_requests ? 1 : std::stol(per_group.str());
  const Rational demand = unit_requests ? Rational(1) : delta;

  AdmissionResult out;
  const Rational threshold(2, lg_n);
  Rational prefix;
  for (int i = 0; i <= lg_n && out.stop_phase < 0; ++i) {
    const Rational before = session.state().primal_total();
    for (int j = 0; j < (1 << i); ++j) {
      const int dim = (1 << i) - 1 + j;
      for (long c = 0; c < copies; ++c) {
        session.offer(single_bid("a" + std::to_string(i) + "." + std::to_string(j) + "." + std::to_string(c),
                                 skeleton.num_bidders(), dim, demand));
      }
    }
    out.x.push_back(session.state().primal_total() - before);
    prefix += out.x.back();
    out.weighted_sum += out.x.back() * Rational::power_of_two(-i);
    if (prefix * Rational::power_of_two(-i) <= threshold) out.stop_phase = i;
  }
  if (out.stop_phase < 0) throw InvariantViolation("admission adversary found no stopping phase");

  out.alg_revenue = session.state().primal_total();
  out.opt_analytic = Rational::power_of_two(out.stop_phase);
  int p = 0;
  for (int k = 0; k < skeleton.num_dimensions(); ++k) {
    p = std::max(p, static_cast<int>(skeleton.constraints_containing(0, k).size()));
  }
  out.p = p;
  out.transcript = with_impressions(skeleton, session.impressions());
  out.transcript.set_meta({{"kind", "admission"},
                           {"n", std::to_string(n)},
                           {"delta", demand.str()},
                           {"stop_phase", std::to_string(out.stop_phase)},
                           {"opt_analytic", out.opt_analytic.str()}});
  return out;
}

AdmissionResult run_admission_lb(Strategy strategy, int n, std::optional<Rational> delta, bool unit_requests,
                                 SessionOptions options) {
  const Instance skeleton = admission_skeleton(n);
  const Rational d = delta.value_or(admission_default_delta(n));
  options.p = n;
  options.eps = unit_requests ? Rational(1) : d;
  Session session(skeleton, strategy, std::move(options));
  AdmissionResult out = run_admission_lb(session, n, d, unit_requests);
  return out;
}

namespace {

struct AonShape {
  int ell;
  int b;
  std::vector<int> width;   // constraints per segment, per level
  std::vector<int> offset;  // first dim of each level
};

AonShape aon_shape(int p, const Rational& eps) {
  if (!(eps.sign() > 0 && eps < Rational(1))) throw std::invalid_argument("aon eps must lie in (0, 1)");
  const Rational ell = (Rational(1) - eps) / eps;
  if (!ell.is_integer()) throw std::invalid_argument("(1 - eps) / eps must be an integer");
  AonShape s;
  s.ell = std::stoi(ell.str());
  s.b = 0;
  for (int b = 2; b <= p; ++b) {
    long power = 1;
    for (int i = 0; i < s.ell && power <= p; ++i) power *= b;
    if (power == p) s.b = b;
  }
  if (s.b < 2) throw std::invalid_argument("p^(eps/(1-eps)) must be an integer >= 2");
  int width = p;
  int next_dim = 1;
  for (int i = 0; i <= s.ell; ++i) {
    s.width.push_back(width);
    s.offset.push_back(next_dim);
    next_dim += p / width;
    width /= s.b;
  }
  return s;
}

}  // namespace

Instance aon_skeleton(int p, const Rational& eps) {
  const AonShape shape = aon_shape(p, eps);
  Bidder bidder{"tree", {}};
  int dims = 1;
  for (int i = 0; i <= shape.ell; ++i) dims += p / shape.width[static_cast<std::size_t>(i)];
  for (int c = 0; c < p; ++c) {
    BudgetConstraint con{"c" + std::to_string(c), {0}, Rational(1)};
    for (int i = 0; i <= shape.ell; ++i) {
      con.dims.push_back(shape.offset[static_cast<std::size_t>(i)] + c / shape.width[static_cast<std::size_t>(i)]);
    }
    bidder.constraints.push_back(std::move(con));
  }
  return Instance(Mode::General, dims, {std::move(bidder)}, {});
}

AonResult run_aon_lb(Session& session, int p, const Rational& eps, const Rational& delta) {
  const AonShape shape = aon_shape(p, eps);
  const Instance& skeleton = session.instance();
  const long block = std::stol((Rational(1) / eps).floor().str());
  AonResult out;
  out.ell = shape.ell;
  out.branching = shape.b;
  if (!(Rational(1) / eps).is_integer()) {
    out.notes.push_back("1/eps not integral; blocks hold " + std::to_string(block) + " impressions");
  }

  const Decision first = session.offer(single_bid("delta", skeleton.num_bidders(), 0, delta));
  out.delta_accepted = first.bidder.has_value() && first.earned_total.sign() > 0;
  const Rational base = out.delta_accepted ? delta : Rational(0);

  // deepest segment that received a block, per constraint
  std::vector<std::pair<int, int>> cell(static_cast<std::size_t>(p), {0, 0});
  std::vector<Rational> share(static_cast<std::size_t>(p));
  std::vector<std::vector<int>> active(static_cast<std::size_t>(shape.ell) + 1);
  active[0].push_back(0);
  for (int i = 0; i <= shape.ell; ++i) {
    const int w = shape.width[static_cast<std::size_t>(i)];
    for (int j : active[static_cast<std::size_t>(i)]) {
      const Rational expected = eps * Rational(i) + base;
      const Rational kappa = session.state().utilization(0, static_cast<std::size_t>(j * w));
      for (int c = j * w; c < (j + 1) * w; ++c) {
        if (session.state().utilization(0, static_cast<std::size_t>(c)) != kappa) {
          throw InvariantViolation("segment constraints disagree on utilization");
        }
        cell[static_cast<std::size_t>(c)] = {i, j};
      }
      ++out.segments_checked;
      if (kappa != expected) out.utilization_lemma_holds = false;

      const int dim = shape.offset[static_cast<std::size_t>(i)] + j;
      int accepted = 0;
      for (long c = 0; c < block; ++c) {
        const Decision d = session.offer(single_bid(
            "b" + std::to_string(i) + "." + std::to_string(j) + "." + std::to_string(c), skeleton.num_bidders(),
            dim, eps));
        if (d.bidder && d.earned_total.sign() > 0) {
          ++accepted;
          for (int k = j * w; k < (j + 1) * w; ++k) share[static_cast<std::size_t>(k)] += d.earned_total / Rational(w);
        }
      }
      if (accepted == 0) continue;
      const int level = i + accepted;
      if (level > shape.ell) {
        out.notes.push_back("segment " + std::to_string(i) + "." + std::to_string(j) + " accepted " +
                            std::to_string(accepted) + " impressions; no level " + std::to_string(level));
        continue;
      }
      const int span = w / shape.width[static_cast<std::size_t>(level)];
      for (int r = j * span; r < (j + 1) * span; ++r) active[static_cast<std::size_t>(level)].push_back(r);
    }
  }

  // τ cells and per-cell revenue
  const Rational bound = Rational(2) * eps / Rational(shape.b);
  for (int c = 0; c < p;) {
    const auto [level, seg] = cell[static_cast<std::size_t>(c)];
    const int w = shape.width[static_cast<std::size_t>(level)];
    AonSegmentCheck check{level, seg, Rational(0), Rational(0), true};
    for (int k = seg * w; k < (seg + 1) * w; ++k) {
      check.revenue += share[static_cast<std::size_t>(k)];
      if (out.delta_accepted) check.delta_share += delta / Rational(p);
    }
    check.within_bound = check.revenue <= bound;
    out.segment_bound_holds = out.segment_bound_holds && check.within_bound;
    out.cells.push_back(std::move(check));
    c = (seg + 1) * w;
  }
  out.alg_revenue = session.state().primal_total();
  out.opt_analytic = Rational(static_cast<long>(out.cells.size())) * Rational(block) * eps;
  out.transcript = with_impressions(skeleton, session.impressions());
  out.transcript.set_meta({{"kind", "aon"},
                           {"p", std::to_string(p)},
                           {"eps", eps.str()},
                           {"delta", delta.str()},
                           {"ell", std::to_string(shape.ell)},
                           {"opt_analytic", out.opt_analytic.str()}});
  return out;
}

AonResult run_aon_lb(Strategy strategy, int p, const Rational& eps, const Rational& delta, SessionOptions options) {
  const Instance skeleton = aon_skeleton(p, eps);
  options.p = p;
  options.eps = max(eps, delta);
  Session session(skeleton, strategy, std::move(options));
  return run_aon_lb(session, p, eps, delta);
}

SharedDimScenarios shared_dim_scenarios(const Rational& delta) {
  const Bidder bidder{"u", {BudgetConstraint{"s01", {0, 1}, Rational(1)}, BudgetConstraint{"s12", {1, 2}, Rational(1)}}};
  auto unit = [](std::string id, int dim) { return single_bid(std::move(id), 1, dim, Rational(1)); };
  auto split = [&delta](const std::string& id, int dim) {
    std::vector<Impression> out;
    const long copies = std::stol((Rational(1) / delta).floor().str());
    for (long c = 0; c < copies; ++c) out.push_back(single_bid(id + "." + std::to_string(c), 1, dim, delta));
    return out;
  };
  SharedDimScenarios s;
  s.a = Instance(Mode::General, 3, {bidder}, {unit("mid", 1), unit("left", 0), unit("right", 2)});
  s.b = Instance(Mode::General, 3, {bidder}, {unit("mid", 1)});
  std::vector<Impression> small_a;
  for (auto [id, dim] : {std::pair{"mid", 1}, std::pair{"left", 0}, std::pair{"right", 2}}) {
    auto part = split(id, dim);
    small_a.insert(small_a.end(), part.begin(), part.end());
  }
  s.a_small = Instance(Mode::General, 3, {bidder}, small_a);
  s.b_small = Instance(Mode::General, 3, {bidder}, split("mid", 1));
  s.a.set_meta({{"kind", "shared-dim"}, {"branch", "A"}, {"opt_analytic", "2"}});
  s.b.set_meta({{"kind", "shared-dim"}, {"branch", "B"}, {"opt_analytic", "1"}});
  s.a_small.set_meta({{"kind", "shared-dim"}, {"branch", "A"}, {"delta", delta.str()}, {"opt_analytic", "2"}});
  s.b_small.set_meta({{"kind", "shared-dim"}, {"branch", "B"}, {"delta", delta.str()}, {"opt_analytic", "1"}});
  return s;
}

}  // namespace adwords
