#include <doctest.h>

#include <stdexcept>

#include "adwords/allocation_state.hpp"
#include "adwords/errors.hpp"

using namespace adwords;

namespace {

Instance two_dims() {
  return Instance(Mode::Laminar, 2,
                  {Bidder{"u", {{"{0}", {0}, Rational(1000)}, {"{1}", {1}, Rational(1000)}, {"s", {0, 1}, Rational(5)}}}},
                  {});
}

}  // namespace

TEST_CASE("remaining capacity") {
  const Instance inst = two_dims();
  AllocationState state(inst);
  CHECK(state.remaining_capacity(0, "s") == Rational(5));
  state.earn(0, 0, {Bid{1, Rational(2)}});
  CHECK(state.remaining_capacity(0, "s") == Rational(3));
  CHECK(state.utilization(0, 2) == Rational(2, 5));
  state.earn(1, 0, {Bid{0, Rational(3)}});
  CHECK(state.remaining_capacity(0, "s") == Rational(0));
  CHECK(state.is_tight(0, 2));
  CHECK_THROWS_AS(state.remaining_capacity(0, "nope"), std::out_of_range);
}

TEST_CASE("earnings accumulate per dimension") {
  const Instance inst(Mode::Laminar, 1, {Bidder{"u", {{"{0}", {0}, Rational(2000)}}}}, {});
  AllocationState state(inst);
  state.earn(0, 0, {Bid{0, Rational(500)}});
  state.earn(1, 0, {Bid{0, Rational(10)}});
  CHECK(state.earned(0, 0) == Rational(510));
  CHECK(state.primal_total() == Rational(510));
}

TEST_CASE("zero earnings only append to the log") {
  const Instance inst = two_dims();
  AllocationState state(inst);
  state.earn(0, 0, {Bid{0, Rational(0)}, Bid{1, Rational(0)}});
  CHECK(state.log().size() == 1);
  CHECK(state.log()[0].bidder == std::optional<std::size_t>(0));
  CHECK(state.primal_total() == Rational(0));
  CHECK(state.used(0, 2) == Rational(0));
}

TEST_CASE("overflow throws and leaves the state untouched") {
  const Instance inst = two_dims();
  AllocationState state(inst);
  state.earn(0, 0, {Bid{0, Rational(4)}});
  CHECK_THROWS_AS(state.earn(1, 0, {Bid{0, Rational(1, 2)}, Bid{1, Rational(1, 2) + Rational(1, 1000)}}),
                  BudgetOverflow);
  CHECK(state.primal_total() == Rational(4));
  CHECK(state.earned(0, 1) == Rational(0));
  CHECK(state.log().size() == 1);
  CHECK_THROWS_AS(state.earn(1, 0, {Bid{0, Rational(-1)}}), std::invalid_argument);
  // exactly full is allowed
  state.earn(1, 0, {Bid{1, Rational(1)}});
  CHECK(state.is_tight(0, 2));
}

TEST_CASE("primal total matches the log") {
  const Instance inst = two_dims();
  AllocationState state(inst);
  state.earn(0, 0, {Bid{0, Rational(1, 3)}});
  state.reject(1);
  state.earn(2, 0, {Bid{1, Rational(1, 7)}, Bid{0, Rational(1, 11)}});
  CHECK(state.log().size() == 3);
  CHECK_FALSE(state.log()[1].bidder.has_value());
  CHECK(state.recompute_primal() == state.primal_total());
  CHECK(state.primal_total() == Rational(1, 3) + Rational(1, 7) + Rational(1, 11));
}

TEST_CASE("dim headroom is the tightest remaining capacity") {
  const Instance inst = two_dims();
  AllocationState state(inst);
  state.earn(0, 0, {Bid{0, Rational(1)}});
  CHECK(state.dim_headroom(0, 1) == std::optional<Rational>(Rational(4)));
  const Instance loose(Mode::General, 2, {Bidder{"u", {{"s", {0}, Rational(1)}}}}, {});
  AllocationState other(loose);
  CHECK_FALSE(other.dim_headroom(0, 1).has_value());
}
