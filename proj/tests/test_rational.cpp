#include <doctest.h>

#include <sstream>
#include <stdexcept>

#include "adwords/rational.hpp"

using adwords::Rational;

TEST_CASE("parse accepts integers, decimals and fractions") {
  CHECK(Rational::parse("3") == Rational(3));
  CHECK(Rational::parse("-2") == Rational(-2));
  CHECK(Rational::parse("0.25") == Rational(1, 4));
  CHECK(Rational::parse("1/4") == Rational(1, 4));
  CHECK(Rational::parse("1.5/2") == Rational(3, 4));
  CHECK(Rational::parse("6/4") == Rational(3, 2));
  CHECK_THROWS_AS(Rational::parse(""), std::invalid_argument);
  CHECK_THROWS_AS(Rational::parse("1/0"), std::invalid_argument);
  CHECK_THROWS_AS(Rational::parse("abc"), std::invalid_argument);
}

TEST_CASE("lowest terms with a positive denominator") {
  const Rational r(6, -4);
  CHECK(r.numerator_str() == "-3");
  CHECK(r.denominator_str() == "2");
  CHECK(r.str() == "-3/2");
  CHECK(Rational(4, 2).str() == "2");
  CHECK(Rational(4, 2).fraction_str() == "2/1");
  CHECK_THROWS_AS(Rational(1, 0), std::domain_error);
}

TEST_CASE("exact arithmetic and ordering") {
  const Rational a(1, 3);
  const Rational b(1, 6);
  CHECK(a + b == Rational(1, 2));
  CHECK(a - b == b);
  CHECK(a * b == Rational(1, 18));
  CHECK(a / b == Rational(2));
  CHECK(-a == Rational(-1, 3));
  CHECK(b < a);
  CHECK(max(a, b) == a);
  CHECK(min(a, b) == b);
  CHECK(abs(Rational(-5, 7)) == Rational(5, 7));
  CHECK_THROWS_AS(a / Rational(0), std::domain_error);
  // 0.1 + 0.2 == 0.3 holds exactly
  CHECK(Rational::parse("0.1") + Rational::parse("0.2") == Rational::parse("0.3"));
}

TEST_CASE("double conversion is exact in both directions for dyadics") {
  CHECK(Rational::from_double(0.375) == Rational(3, 8));
  CHECK(Rational::from_double(-2.0) == Rational(-2));
  CHECK(Rational::from_double(0.1).to_double() == 0.1);
  CHECK(Rational::from_double(0.1) != Rational(1, 10));
}

TEST_CASE("powers of two, floor and truncation") {
  CHECK(Rational::power_of_two(3) == Rational(8));
  CHECK(Rational::power_of_two(-3) == Rational(1, 8));
  CHECK(Rational(7, 2).floor() == Rational(3));
  CHECK(Rational(-7, 2).floor() == Rational(-4));
  CHECK(Rational(7, 10).truncate_to_denominator_bits(3) == Rational(5, 8));
  CHECK(Rational(-7, 10).truncate_to_denominator_bits(3) == Rational(-5, 8));
  CHECK(Rational(3, 5).truncate_to_denominator_bits(2).str() == "1/2");
  // denominators up to 2^bits are kept as they are
  CHECK(Rational(1, 3).truncate_to_denominator_bits(2) == Rational(1, 3));
  CHECK(Rational(1, 1024).denominator_bits() == 11);
}

TEST_CASE("decimal rendering rounds to the requested digits") {
  CHECK(Rational(1, 3).decimal_str(4) == "0.3333");
  CHECK(Rational(2, 3).decimal_str(3) == "0.667");
  CHECK(Rational(-1, 8).decimal_str(3) == "-0.125");
  std::ostringstream os;
  os << Rational(5, 10);
  CHECK(os.str() == "1/2");
}
