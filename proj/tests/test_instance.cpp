#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "adwords/errors.hpp"
#include "adwords/generators.hpp"
#include "adwords/instance.hpp"
#include "adwords/laminar_forest.hpp"

using namespace adwords;

namespace {

Impression imp(std::string id, std::size_t bidders, std::size_t u, std::vector<Bid> bids) {
  Impression v{std::move(id), {}};
  v.bids.resize(bidders);
  v.bids[u] = std::move(bids);
  return v;
}

bool has_violation(const std::vector<std::string>& list, const std::string& prefix) {
  return std::any_of(list.begin(), list.end(), [&](const std::string& s) { return s.rfind(prefix, 0) == 0; });
}

}  // namespace

TEST_CASE("crossing sets are non-laminar only in laminar mode") {
  const Bidder b{"u", {{"a", {0, 1}, Rational(1)}, {"b", {1, 2}, Rational(1)}}};
  const Instance laminar(Mode::Laminar, 3, {b}, {});
  const Instance general(Mode::General, 3, {b}, {});
  CHECK(has_violation(validate(laminar), "non-laminar pair"));
  CHECK(validate(general).empty());
}

TEST_CASE("laminarity verdict ignores constraint order") {
  std::vector<BudgetConstraint> cons = {{"r", {0, 1, 2, 3}, Rational(4)}, {"x", {0, 1}, Rational(2)},
                                        {"y", {2, 3}, Rational(2)},       {"z", {1, 2}, Rational(1)},
                                        {"{0}", {0}, Rational(1)}};
  std::mt19937 rng(7);
  for (int i = 0; i < 20; ++i) {
    std::shuffle(cons.begin(), cons.end(), rng);
    CHECK(has_violation(validate(Instance(Mode::Laminar, 4, {Bidder{"u", cons}}, {})), "non-laminar pair"));
  }
}

TEST_CASE("structural violations are reported, not thrown") {
  const Instance zero(Mode::General, 1, {Bidder{"u", {{"s", {0}, Rational(0)}}}}, {});
  CHECK(has_violation(validate(zero), "non-positive budget"));
  const Instance empty(Mode::General, 1, {Bidder{"u", {{"s", {}, Rational(1)}}}}, {});
  CHECK(has_violation(validate(empty), "empty constraint"));
  const Instance range(Mode::General, 1, {Bidder{"u", {{"s", {3}, Rational(1)}}}}, {});
  CHECK(has_violation(validate(range), "dimension out of range"));
  const Instance neg(Mode::General, 1, {Bidder{"u", {{"s", {0}, Rational(1)}}}},
                     {imp("v", 1, 0, {Bid{0, Rational(-1)}})});
  CHECK(has_violation(validate(neg), "negative bid"));
  const Instance missing(Mode::Laminar, 2, {Bidder{"u", {{"s", {0, 1}, Rational(1)}, {"{0}", {0}, Rational(1)}}}},
                         {imp("v", 1, 0, {Bid{1, Rational(1, 2)}})});
  CHECK(has_violation(validate(missing), "missing singleton budget"));
}

TEST_CASE("singleton synthesis takes the tightest enclosing budget") {
  const Instance base(Mode::Laminar, 3,
                      {Bidder{"u", {{"big", {0, 1, 2}, Rational(5)}, {"pair", {0, 1}, Rational(2)}}}},
                      {imp("v", 1, 0, {Bid{2, Rational(1, 2)}})});
  const Instance fixed = synthesize_singletons(base);
  CHECK(validate(fixed).empty());
  const auto& cons = fixed.bidder(0).constraints;
  auto budget_of = [&](const std::string& id) {
    for (const auto& c : cons) {
      if (c.id == id) return c.budget;
    }
    return Rational(-1);
  };
  CHECK(budget_of("{0}") == Rational(2));
  CHECK(budget_of("{1}") == Rational(2));
  CHECK(budget_of("{2}") == Rational(5));
}

TEST_CASE("p counts the constraints sharing a dimension") {
  const Instance inst(Mode::Laminar, 2,
                      {Bidder{"u", {{"{0}", {0}, Rational(1)}, {"{1}", {1}, Rational(1)}, {"both", {0, 1}, Rational(2)}}}},
                      {});
  CHECK(instance_stats(inst).p == 2);
}

TEST_CASE("eps is the largest bid-to-budget ratio") {
  const Instance inst(Mode::General, 1, {Bidder{"u", {{"s", {0}, Rational(1)}}}}, {imp("v", 1, 0, {Bid{0, Rational(1)}})});
  const InstanceStats stats = instance_stats(inst);
  CHECK(stats.eps == Rational(1));
  CHECK_FALSE(stats.small_bids_ok);
}

TEST_CASE("small bids threshold at p = 1 is one half") {
  CHECK(small_bids_threshold(1) == 0.5);
  CHECK(small_bids_threshold(3) == doctest::Approx(1.0 / 3.0));
  CHECK(small_bids_threshold(2) < 1.0 / std::log2(6.0) + 1e-15);
  const Instance inst(Mode::General, 1, {Bidder{"u", {{"s", {0}, Rational(2)}}}},
                      {imp("v", 1, 0, {Bid{0, Rational(1)}}), imp("w", 1, 0, {Bid{0, Rational(1, 2)}})});
  const InstanceStats stats = instance_stats(inst);
  CHECK(stats.p == 1);
  CHECK(stats.eps == Rational(1, 2));
  CHECK(stats.small_bids_ok);
}

TEST_CASE("bids are normalized on construction") {
  const Instance inst(Mode::General, 3, {Bidder{"u", {{"s", {2, 0, 2}, Rational(1)}}}},
                      {imp("v", 1, 0, {Bid{2, Rational(1)}, Bid{0, Rational(0)}, Bid{1, Rational(1, 2)}, Bid{2, Rational(1)}})});
  CHECK(inst.bidder(0).constraints[0].dims == std::vector<int>{0, 2});
  const auto row = inst.impression(0).bids_of(0);
  REQUIRE(row.size() == 2);
  CHECK(row[0] == Bid{1, Rational(1, 2)});
  CHECK(row[1] == Bid{2, Rational(2)});
  CHECK(inst.impression(0).bid(0, 2) == Rational(2));
  CHECK(inst.impression(0).bid(0, 0) == Rational(0));
  CHECK(inst.constraints_containing(0, 2).size() == 1);
  CHECK(inst.constraints_containing(0, 1).empty());
}

TEST_CASE("scaling and impression swaps keep metadata") {
  Instance inst(Mode::General, 1, {Bidder{"u", {{"s", {0}, Rational(2)}}}}, {imp("v", 1, 0, {Bid{0, Rational(1)}})});
  inst.set_meta({{"kind", "test"}});
  const Instance twice = scaled(inst, Rational(2));
  CHECK(twice.bidder(0).constraints[0].budget == Rational(4));
  CHECK(twice.impression(0).bid(0, 0) == Rational(2));
  CHECK(twice.meta().at("kind") == "test");
  const Instance none = with_impressions(inst, {});
  CHECK(none.num_impressions() == 0);
  CHECK(none.meta().at("kind") == "test");
}

TEST_CASE("forest parents are minimal supersets") {
  const Instance inst(Mode::Laminar, 4,
                      {Bidder{"u",
                              {{"{0}", {0}, Rational(1)},
                               {"all", {0, 1, 2, 3}, Rational(4)},
                               {"left", {0, 1}, Rational(2)},
                               {"{1}", {1}, Rational(1)},
                               {"{2}", {2}, Rational(1)},
                               {"{3}", {3}, Rational(1)}}}},
                      {});
  const LaminarForest f(inst, 0);
  CHECK(f.parent(0) == 2);
  CHECK(f.parent(2) == 1);
  CHECK(f.parent(4) == 1);
  CHECK(f.parent(1) == -1);
  CHECK(f.roots() == std::vector<int>{1});
  CHECK(f.depth(0) == 2);
  CHECK(f.ancestors(0) == std::vector<int>{0, 2, 1});
  CHECK(f.descendant_singletons(2) == std::vector<int>{0, 3});
  CHECK(f.singleton_of(3) == 5);
  CHECK(f.contains(1, 0));
  CHECK_FALSE(f.contains(2, 4));
  const auto& order = f.post_order();
  auto pos = [&](int s) { return std::find(order.begin(), order.end(), s) - order.begin(); };
  CHECK(pos(0) < pos(2));
  CHECK(pos(2) < pos(1));
}

TEST_CASE("duplicate singletons: the deepest carries the revenue") {
  const Instance inst(Mode::Laminar, 1, {Bidder{"u", {{"a", {0}, Rational(1)}, {"b", {0}, Rational(2)}}}}, {});
  const LaminarForest f(inst, 0);
  CHECK(f.parent(0) == 1);
  CHECK(f.singleton_of(0) == 0);
}

TEST_CASE("non-laminar families have no forest") {
  const Instance inst(Mode::General, 3, {Bidder{"u", {{"a", {0, 1}, Rational(1)}, {"b", {1, 2}, Rational(1)}}}}, {});
  CHECK_THROWS_AS(LaminarForest(inst, 0), InvariantViolation);
}

TEST_CASE("generated laminar instances validate") {
  RandomInstanceSpec spec;
  spec.mode = Mode::Laminar;
  spec.dimensions = 4;
  spec.depth = 3;
  spec.branching = 2;
  spec.bidders = 2;
  spec.impressions = 30;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Instance inst = random_laminar(spec, seed);
    CHECK(validate(inst).empty());
    CHECK(instance_stats(inst).small_bids_ok);
    const LaminarForest f(inst, 0);
    // 4 singleton leaves under one binary hierarchy
    CHECK(f.roots().size() == 1);
    CHECK(f.descendant_singletons(f.roots()[0]).size() == 4);
    CHECK(f.size() == 7);
  }
}

TEST_CASE("generated general instances respect p and small bids") {
  RandomInstanceSpec spec;
  spec.mode = Mode::General;
  spec.dimensions = 6;
  spec.p = 3;
  spec.impressions = 30;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Instance inst = random_general(spec, seed);
    CHECK(validate(inst).empty());
    const InstanceStats stats = instance_stats(inst);
    CHECK(stats.p <= 3);
    CHECK(stats.small_bids_ok);
  }
}
