#include "adwords/opt.hpp"

#include <algorithm>
#include <limits>
#include <map>

#include "adwords/errors.hpp"
#include "adwords/laminar_forest.hpp"
#include "adwords/simplex.hpp"

namespace adwords {

std::string_view to_string(Semantics semantics) {
  return semantics == Semantics::Partial ? "partial" : "aon";
}

std::optional<Semantics> parse_semantics(std::string_view name) {
  if (name == "partial") return Semantics::Partial;
  if (name == "aon") return Semantics::AllOrNothing;
  return std::nullopt;
}

namespace {

struct Triplet {
  long row;
  long col;
  Rational value;
};

struct BidRowsLess {
  bool operator()(const std::vector<std::vector<Bid>>& a, const std::vector<std::vector<Bid>>& b) const {
    auto bid_less = [](const Bid& x, const Bid& y) { return x.dim != y.dim ? x.dim < y.dim : x.value < y.value; };
    auto row_less = [&](const std::vector<Bid>& x, const std::vector<Bid>& y) {
      return std::lexicographical_compare(x.begin(), x.end(), y.begin(), y.end(), bid_less);
    };
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end(), row_less);
  }
};

// Identical bid vectors merge into one impression with bids scaled by the
// multiplicity; the LP value is unchanged.
std::vector<std::vector<std::vector<Bid>>> merged_rows(const Instance& instance) {
  std::map<std::vector<std::vector<Bid>>, long, BidRowsLess> count;
  std::vector<std::vector<std::vector<Bid>>> order;
  for (const Impression& imp : instance.impressions()) {
    bool any = false;
    for (const auto& row : imp.bids) any = any || !row.empty();
    if (!any) continue;
    auto key = imp.bids;
    key.resize(instance.num_bidders());
    auto [it, fresh] = count.try_emplace(key, 0);
    if (fresh) order.push_back(key);
    ++it->second;
  }
  for (auto& rows : order) {
    const Rational m(count[rows]);
    for (auto& row : rows) {
      for (Bid& b : row) b.value *= m;
    }
  }
  return order;
}

template <typename Scalar>
SimplexResult<Scalar> solve_lp(long rows, long cols, const std::vector<Triplet>& entries,
                               const std::vector<Rational>& rhs, const std::vector<Rational>& objective,
                               long max_pivots) {
  using Matrix = typename DenseSimplex<Scalar>::Matrix;
  using Vector = typename DenseSimplex<Scalar>::Vector;
  Matrix A = Matrix::Zero(rows, cols);
  Vector b(rows);
  Vector c(cols);
  auto cast = [](const Rational& r) {
    if constexpr (std::is_same_v<Scalar, double>) {
      return r.to_double();
    } else {
      return r;
    }
  };
  for (const Triplet& t : entries) A(t.row, t.col) = cast(t.value);
  for (long i = 0; i < rows; ++i) b(i) = cast(rhs[static_cast<std::size_t>(i)]);
  for (long j = 0; j < cols; ++j) c(j) = cast(objective[static_cast<std::size_t>(j)]);
  return DenseSimplex<Scalar>(A, b, c).solve(max_pivots);
}

}  // namespace

LpResult opt_lp(const Instance& instance, long rational_pivot_limit) {
  const auto impressions = merged_rows(instance);
  LpResult out;
  out.merged_impressions = impressions.size();

  std::vector<Triplet> entries;
  std::vector<Rational> rhs;
  std::vector<Rational> objective;
  long cols = 0;
  long rows = 0;
  // usage[u][s] -> e columns counted against (u, s)
  std::vector<std::vector<std::vector<long>>> usage(instance.num_bidders());
  for (std::size_t u = 0; u < instance.num_bidders(); ++u) usage[u].resize(instance.bidder(u).constraints.size());

  for (const auto& rowset : impressions) {
    std::vector<long> xs;
    for (std::size_t u = 0; u < instance.num_bidders(); ++u) {
      const auto& bids = rowset[u];
      if (bids.empty()) continue;
      const long x = cols++;
      objective.push_back(Rational(0));
      xs.push_back(x);
      for (const Bid& bid : bids) {
        const long e = cols++;
        objective.push_back(Rational(1));
        entries.push_back({rows, e, Rational(1)});
        entries.push_back({rows, x, -bid.value});
        rhs.push_back(Rational(0));
        ++rows;
        for (int s : instance.constraints_containing(u, bid.dim)) usage[u][static_cast<std::size_t>(s)].push_back(e);
      }
    }
    for (long x : xs) entries.push_back({rows, x, Rational(1)});
    rhs.push_back(Rational(1));
    ++rows;
  }
  for (std::size_t u = 0; u < instance.num_bidders(); ++u) {
    for (std::size_t s = 0; s < usage[u].size(); ++s) {
      if (usage[u][s].empty()) continue;
      for (long e : usage[u][s]) entries.push_back({rows, e, Rational(1)});
      rhs.push_back(instance.bidder(u).constraints[s].budget);
      ++rows;
    }
  }
  out.rows = rows;
  out.cols = cols;
  if (cols == 0) {
    out.exact = Rational(0);
    return out;
  }

  auto exact = solve_lp<Rational>(rows, cols, entries, rhs, objective, rational_pivot_limit);
  out.pivots = exact.pivots;
  if (exact.status == SimplexStatus::Optimal) {
    out.exact = exact.value;
    out.value = exact.value.to_double();
    return out;
  }
  if (exact.status == SimplexStatus::Unbounded) throw InvariantViolation("offline LP reported unbounded");
  auto approx = solve_lp<double>(rows, cols, entries, rhs, objective, std::numeric_limits<long>::max());
  if (approx.status != SimplexStatus::Optimal) throw InvariantViolation("offline LP reported unbounded");
  out.pivots += approx.pivots;
  out.value = approx.value;
  return out;
}

Rational best_partial_earning(const Instance& instance, std::size_t bidder, const std::vector<Rational>& caps) {
  const auto& cons = instance.bidder(bidder).constraints;
  if (instance.mode() == Mode::Laminar) {
    // bottom-up water-fill is exact on a laminar family
    const LaminarForest forest(instance, bidder);
    std::vector<Rational> value(cons.size());
    std::vector<bool> covered(caps.size(), false);
    for (int s : forest.post_order()) {
      Rational inner;
      std::vector<bool> in_child(caps.size(), false);
      for (int c : forest.children(s)) {
        inner += value[static_cast<std::size_t>(c)];
        for (int k : forest.constraint(c).dims) in_child[static_cast<std::size_t>(k)] = true;
      }
      for (int k : forest.constraint(s).dims) {
        covered[static_cast<std::size_t>(k)] = true;
        if (!in_child[static_cast<std::size_t>(k)]) inner += caps[static_cast<std::size_t>(k)];
      }
      value[static_cast<std::size_t>(s)] = min(inner, forest.budget(s));
    }
    Rational total;
    for (int r : forest.roots()) total += value[static_cast<std::size_t>(r)];
    for (std::size_t k = 0; k < caps.size(); ++k) {
      if (!covered[k]) total += caps[k];
    }
    return total;
  }
  // general family: max Σ e_k, e_k <= cap_k, Σ_{k∈s} e_k <= B_s
  std::vector<int> dims;
  Rational free_total;
  for (std::size_t k = 0; k < caps.size(); ++k) {
    if (caps[k].is_zero()) continue;
    if (instance.constraints_containing(bidder, static_cast<int>(k)).empty()) {
      free_total += caps[k];
    } else {
      dims.push_back(static_cast<int>(k));
    }
  }
  if (dims.empty()) return free_total;
  std::vector<Triplet> entries;
  std::vector<Rational> rhs;
  long rows = 0;
  for (std::size_t j = 0; j < dims.size(); ++j) {
    entries.push_back({rows++, static_cast<long>(j), Rational(1)});
    rhs.push_back(caps[static_cast<std::size_t>(dims[j])]);
  }
  for (const auto& c : cons) {
    bool used = false;
    for (std::size_t j = 0; j < dims.size(); ++j) {
      if (std::binary_search(c.dims.begin(), c.dims.end(), dims[j])) {
        entries.push_back({rows, static_cast<long>(j), Rational(1)});
        used = true;
      }
    }
    if (used) {
      rhs.push_back(c.budget);
      ++rows;
    }
  }
  const std::vector<Rational> objective(dims.size(), Rational(1));
  auto res = solve_lp<Rational>(rows, static_cast<long>(dims.size()), entries, rhs, objective,
                                std::numeric_limits<long>::max());
  return res.value + free_total;
}

Rational opt_brute(const Instance& instance, Semantics semantics) {
  const std::size_t nv = instance.num_impressions();
  const std::size_t nu = instance.num_bidders();
  if (nv > 12 || nu > 4) {
    throw OracleLimitExceeded("brute-force oracle limited to 12 impressions and 4 bidders, got " +
                              std::to_string(nv) + " and " + std::to_string(nu));
  }
  const std::size_t full = (std::size_t{1} << nv) - 1;
  const auto dims = static_cast<std::size_t>(std::max(instance.num_dimensions(), 0));

  // best[mask]: optimum using the bidders processed so far
  std::vector<std::optional<Rational>> best(full + 1, Rational(0));
  for (std::size_t u = 0; u < nu; ++u) {
    std::vector<std::optional<Rational>> value(full + 1);
    for (std::size_t mask = 0; mask <= full; ++mask) {
      std::vector<Rational> caps(dims);
      for (std::size_t v = 0; v < nv; ++v) {
        if (!((mask >> v) & 1U)) continue;
        for (const Bid& b : instance.impression(v).bids_of(u)) caps[static_cast<std::size_t>(b.dim)] += b.value;
      }
      if (semantics == Semantics::Partial) {
        value[mask] = best_partial_earning(instance, u, caps);
        continue;
      }
      bool fits = true;
      for (const auto& c : instance.bidder(u).constraints) {
        Rational used;
        for (int k : c.dims) used += caps[static_cast<std::size_t>(k)];
        if (used > c.budget) fits = false;
      }
      if (fits) {
        Rational total;
        for (const Rational& x : caps) total += x;
        value[mask] = total;
      }
    }
    std::vector<std::optional<Rational>> next(full + 1);
    for (std::size_t mask = 0; mask <= full; ++mask) {
      // sub = impressions given to bidder u
      for (std::size_t sub = mask;; sub = (sub - 1) & mask) {
        const auto& rest = best[mask ^ sub];
        if (rest && value[sub]) {
          Rational cand = *rest + *value[sub];
          if (!next[mask] || cand > *next[mask]) next[mask] = std::move(cand);
        }
        if (sub == 0) break;
      }
    }
    best = std::move(next);
  }
  Rational out;
  for (const auto& b : best) {
    if (b && *b > out) out = *b;
  }
  return out;
}

Rational opt_analytic(const Instance& transcript) {
  auto it = transcript.meta().find("opt_analytic");
  if (it == transcript.meta().end()) throw Error("not a generated transcript: no opt_analytic");
  return Rational::parse(it->second);
}

}  // namespace adwords
