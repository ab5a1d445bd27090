#include <doctest.h>

#include "adwords/errors.hpp"
#include "adwords/labels.hpp"

using namespace adwords;

namespace {

// dims 0 and 1: B{0} = 1, B{1} = 2, B{0,1} = 2
Instance pair_instance() {
  return Instance(Mode::Laminar, 2,
                  {Bidder{"u", {{"{0}", {0}, Rational(1)}, {"{1}", {1}, Rational(2)}, {"both", {0, 1}, Rational(2)}}}},
                  {});
}

// dims 0..3: {0},{1} under {0,1} (B 3); {2},{3}; {0,1,2,3} with B 8
Instance four_instance() {
  return Instance(Mode::Laminar, 4,
                  {Bidder{"u",
                          {{"{0}", {0}, Rational(10)},
                           {"{1}", {1}, Rational(10)},
                           {"{2}", {2}, Rational(10)},
                           {"{3}", {3}, Rational(10)},
                           {"low", {0, 1}, Rational(3)},
                           {"top", {0, 1, 2, 3}, Rational(8)}}}},
                  {});
}

}  // namespace

TEST_CASE("fresh labels are zero with full L sets") {
  const Instance inst = pair_instance();
  const LaminarForest f(inst, 0);
  const LabelState labels(f);
  CHECK(labels.label(2) == Rational(0));
  CHECK(labels.L(2) == std::set<int>{0, 1});
  CHECK(labels.T(2).empty());
  CHECK(labels.L(0) == std::set<int>{0});
  CHECK(labels.check_properties().empty());
}

TEST_CASE("empty and single-node forests") {
  const Instance none(Mode::Laminar, 0, {Bidder{"u", {}}}, {});
  const LaminarForest f0(none, 0);
  const LabelState empty(f0);
  CHECK(empty.check_properties().empty());
  CHECK(empty.dump().empty());

  const Instance one(Mode::Laminar, 1, {Bidder{"u", {{"{0}", {0}, Rational(1)}}}}, {});
  const LaminarForest f1(one, 0);
  LabelState labels(f1);
  CHECK_FALSE(labels.next_crossing(0).has_value());
  labels.increment_revenue(0, Rational(1));
  CHECK(labels.label(0) == Rational(1));
  CHECK(labels.g_value(0) == labels.label(0));
}

TEST_CASE("faster child is shielded at the start of an increment") {
  const Instance inst = pair_instance();
  const LaminarForest f(inst, 0);
  LabelState labels(f);
  const auto c = labels.next_crossing(0);
  REQUIRE(c.has_value());
  CHECK(c->x == Rational(0));
  REQUIRE(c->events.size() == 1);
  CHECK(c->events[0].kind == LabelEvent::Kind::Shield);
  CHECK(c->events[0].s == 2);
  CHECK(c->events[0].s_prime == 0);

  labels.increment_revenue(0, Rational(1));
  CHECK(labels.label(0) == Rational(1));
  CHECK(labels.label(2) == Rational(0));
  CHECK(labels.T(2) == std::set<int>{0});
  CHECK(labels.L(2) == std::set<int>{1});
  CHECK(labels.denominator(2) == Rational(1));
  CHECK(labels.g_value(0) == Rational(1));
  CHECK(labels.g_value(1) == Rational(0));
  CHECK(labels.check_properties().empty());
}

TEST_CASE("parent absorbs the child when it catches up") {
  const Instance inst = pair_instance();
  const LaminarForest f(inst, 0);
  LabelState labels(f);
  labels.increment_revenue(0, Rational(1));
  const auto events = labels.increment_revenue(1, Rational(2));
  REQUIRE(events.size() == 1);
  CHECK(events[0].kind == LabelEvent::Kind::Merge);
  CHECK(events[0].offset == Rational(1));
  CHECK(labels.T(2).empty());
  CHECK(labels.label(2) == Rational(3, 2));
  CHECK(labels.check_properties().empty());
}

TEST_CASE("merge at the end of an increment on a four-dimension tree") {
  const Instance inst = four_instance();
  const LaminarForest f(inst, 0);
  LabelState labels(f);
  labels.increment_revenue(0, Rational(1));
  // low (B 3) grows faster than top (B 8): shielded immediately
  CHECK(labels.T(5) == std::set<int>{4});
  labels.increment_revenue(1, Rational(1));
  CHECK(labels.label(4) == Rational(2, 3));
  labels.increment_revenue(2, Rational(1));
  CHECK(labels.label(5) == Rational(1, 5));
  CHECK(labels.label(2) == Rational(1, 10));
  CHECK(labels.L(5) == std::set<int>{2, 3});

  const auto c = labels.next_crossing(2);
  REQUIRE(c.has_value());
  CHECK(c->x == Rational(7, 3));
  REQUIRE(c->events.size() == 1);
  CHECK(c->events[0].kind == LabelEvent::Kind::Merge);
  CHECK(c->events[0].s == 5);
  CHECK(c->events[0].s_prime == 4);

  const auto events = labels.increment_revenue(2, Rational(7, 3));
  REQUIRE(events.size() == 1);
  CHECK(labels.revenue(2) == Rational(10, 3));
  CHECK(labels.T(5).empty());
  CHECK(labels.L(5) == std::set<int>{0, 1, 2, 3});
  CHECK(labels.label(5) == Rational(2, 3));
  CHECK(labels.label(4) == Rational(2, 3));
  CHECK(labels.check_properties().empty());
}

TEST_CASE("events keep the label fixed and reverse each other") {
  const Instance inst = four_instance();
  const LaminarForest f(inst, 0);
  LabelState labels(f);
  labels.increment_revenue(0, Rational(1));
  labels.increment_revenue(1, Rational(1));
  labels.increment_revenue(2, Rational(10, 3));
  const auto L_before = labels.L(5);
  const auto T_before = labels.T(5);
  const Rational before = labels.label(5);
  labels.apply_event1(5, 4);
  CHECK(labels.label(5) == before);
  CHECK(labels.T(5) == std::set<int>{4});
  labels.apply_event2(5, 4);
  CHECK(labels.label(5) == before);
  CHECK(labels.L(5) == L_before);
  CHECK(labels.T(5) == T_before);
}

TEST_CASE("events away from a transition are refused") {
  const Instance inst = four_instance();
  const LaminarForest f(inst, 0);
  LabelState labels(f);
  labels.increment_revenue(0, Rational(1));
  labels.increment_revenue(1, Rational(1));
  CHECK_THROWS_AS(labels.apply_event2(5, 4), NotAtTransition);
  CHECK_THROWS_AS(labels.apply_event1(5, 0), NotAtTransition);
}

TEST_CASE("zero increments change nothing") {
  const Instance inst = pair_instance();
  const LaminarForest f(inst, 0);
  LabelState labels(f);
  const std::string before = labels.dump();
  CHECK(labels.increment_revenue(0, Rational(0)).empty());
  CHECK(labels.dump() == before);
  CHECK_THROWS_AS(labels.increment_revenue(0, Rational(-1)), std::invalid_argument);
}

TEST_CASE("dump lists one node per line") {
  const Instance inst = pair_instance();
  const LaminarForest f(inst, 0);
  LabelState labels(f);
  labels.increment_revenue(0, Rational(1));
  CHECK(labels.dump() ==
        "{0} | 1/1 | L={{0}} | T={}\n"
        "{1} | 0/1 | L={{1}} | T={}\n"
        "both | 0/1 | L={{1}} | T={{0}}\n");
}

TEST_CASE("replay is deterministic") {
  const Instance inst = four_instance();
  const LaminarForest f(inst, 0);
  LabelState a(f);
  LabelState b(f);
  for (LabelState* s : {&a, &b}) {
    s->increment_revenue(3, Rational(1, 2));
    s->increment_revenue(0, Rational(2));
    s->increment_revenue(2, Rational(5));
    s->increment_revenue(1, Rational(3, 4));
  }
  CHECK(a.dump() == b.dump());
}
