#include <doctest.h>

#include "adwords/adversary.hpp"
#include "adwords/errors.hpp"
#include "adwords/opt.hpp"

using namespace adwords;

namespace {

Impression imp(std::string id, std::vector<std::vector<Bid>> bids) { return Impression{std::move(id), std::move(bids)}; }

}  // namespace

TEST_CASE("semantics names round trip") {
  CHECK(parse_semantics("partial") == Semantics::Partial);
  CHECK(parse_semantics("aon") == Semantics::AllOrNothing);
  CHECK_FALSE(parse_semantics("x").has_value());
}

TEST_CASE("a bid above the budget earns the budget") {
  const Instance inst(Mode::General, 1, {Bidder{"u", {{"s", {0}, Rational(1)}}}}, {imp("v", {{Bid{0, Rational(3)}}})});
  const LpResult lp = opt_lp(inst);
  REQUIRE(lp.exact.has_value());
  CHECK(*lp.exact == Rational(1));
  CHECK(opt_brute(inst, Semantics::Partial) == Rational(1));
  CHECK(opt_brute(inst, Semantics::AllOrNothing) == Rational(0));
}

TEST_CASE("an impression goes to one bidder") {
  const Instance inst(Mode::General, 1,
                      {Bidder{"a", {{"s", {0}, Rational(5)}}}, Bidder{"b", {{"s", {0}, Rational(5)}}}},
                      {imp("v", {{Bid{0, Rational(1)}}, {Bid{0, Rational(1)}}})});
  CHECK(*opt_lp(inst).exact == Rational(1));
  CHECK(opt_brute(inst, Semantics::Partial) == Rational(1));
}

TEST_CASE("fractional split beats every integral assignment") {
  // LP sends half the impression to each bidder; an integral choice earns 1/2
  const Instance inst(Mode::General, 1,
                      {Bidder{"a", {{"s", {0}, Rational(1, 2)}}}, Bidder{"b", {{"s", {0}, Rational(1, 2)}}}},
                      {imp("v", {{Bid{0, Rational(1)}}, {Bid{0, Rational(1)}}})});
  CHECK(*opt_lp(inst).exact == Rational(1));
  CHECK(opt_brute(inst, Semantics::Partial) == Rational(1, 2));
}

TEST_CASE("empty instances are worth nothing") {
  const Instance inst(Mode::General, 1, {Bidder{"u", {{"s", {0}, Rational(1)}}}}, {});
  CHECK(*opt_lp(inst).exact == Rational(0));
  CHECK(opt_brute(inst, Semantics::Partial) == Rational(0));
  const Instance no_bids(Mode::General, 1, {Bidder{"u", {{"s", {0}, Rational(1)}}}}, {imp("v", {{}})});
  CHECK(opt_brute(no_bids, Semantics::AllOrNothing) == Rational(0));
}

TEST_CASE("shared middle dimension") {
  const SharedDimScenarios sc = shared_dim_scenarios();
  CHECK(*opt_lp(sc.a).exact == Rational(2));
  CHECK(opt_brute(sc.a, Semantics::Partial) == Rational(2));
  CHECK(opt_brute(sc.a, Semantics::AllOrNothing) == Rational(2));
  CHECK(*opt_lp(sc.b).exact == Rational(1));
  CHECK(opt_brute(sc.b, Semantics::Partial) == Rational(1));
  CHECK(opt_analytic(sc.a) == Rational(2));
  CHECK(opt_analytic(sc.b) == Rational(1));
}

TEST_CASE("identical impressions merge without changing the value") {
  std::vector<Impression> imps;
  for (int i = 0; i < 6; ++i) imps.push_back(imp("v" + std::to_string(i), {{Bid{0, Rational(1, 4)}}}));
  const Instance inst(Mode::General, 1, {Bidder{"u", {{"s", {0}, Rational(1)}}}}, imps);
  const LpResult lp = opt_lp(inst);
  CHECK(lp.merged_impressions == 1);
  CHECK(*lp.exact == Rational(1));
  CHECK(opt_brute(inst, Semantics::Partial) == Rational(1));
  CHECK(opt_brute(inst, Semantics::AllOrNothing) == Rational(1));
}

TEST_CASE("laminar water-fill caps every level") {
  const Instance inst(Mode::Laminar, 3,
                      {Bidder{"u", {{"{0}", {0}, Rational(1)}, {"{1}", {1}, Rational(1)}, {"s", {0, 1}, Rational(3, 2)}}}},
                      {});
  CHECK(best_partial_earning(inst, 0, {Rational(2), Rational(1, 4), Rational(5)}) == Rational(5, 4) + Rational(5));
  const Instance general(Mode::General, 2,
                         {Bidder{"u", {{"a", {0}, Rational(1)}, {"b", {0, 1}, Rational(3, 2)}}}}, {});
  CHECK(best_partial_earning(general, 0, {Rational(2), Rational(2)}) == Rational(3, 2));
}

TEST_CASE("brute force refuses large instances") {
  std::vector<Impression> imps;
  for (int i = 0; i < 13; ++i) imps.push_back(imp("v" + std::to_string(i), {{Bid{0, Rational(1)}}}));
  const Instance inst(Mode::General, 1, {Bidder{"u", {{"s", {0}, Rational(1)}}}}, imps);
  CHECK_THROWS_AS(opt_brute(inst, Semantics::Partial), OracleLimitExceeded);
}

TEST_CASE("analytic optimum needs a generated transcript") {
  const Instance inst(Mode::General, 1, {Bidder{"u", {}}}, {});
  CHECK_THROWS_AS(opt_analytic(inst), Error);
}
