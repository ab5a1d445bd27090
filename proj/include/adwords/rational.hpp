#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace adwords {

/// Exact rational number backed by GMP. Always kept in lowest terms with a
/// positive denominator.
class Rational {
 public:
  Rational() = default;
  Rational(long value) : value_(value) {}  // NOLINT(google-explicit-constructor)
  Rational(long numerator, long denominator);
  explicit Rational(mpq_class value);

  /// Parses "3", "-2", "0.25", "1/4" or "1.5/2" style text exactly.
  static Rational parse(std::string_view text);

  /// Exact conversion of a finite double (every double is a dyadic rational).
  static Rational from_double(double value);

  /// 2^exponent for exponent >= 0, 2^-|exponent| otherwise.
  static Rational power_of_two(int exponent);

  Rational& operator+=(const Rational& rhs);
  Rational& operator-=(const Rational& rhs);
  Rational& operator*=(const Rational& rhs);
  Rational& operator/=(const Rational& rhs);

  friend Rational operator+(Rational lhs, const Rational& rhs) { return lhs += rhs; }
  friend Rational operator-(Rational lhs, const Rational& rhs) { return lhs -= rhs; }
  friend Rational operator*(Rational lhs, const Rational& rhs) { return lhs *= rhs; }
  friend Rational operator/(Rational lhs, const Rational& rhs) { return lhs /= rhs; }
  Rational operator-() const;

  friend bool operator==(const Rational& lhs, const Rational& rhs) {
    return cmp(lhs.value_, rhs.value_) == 0;
  }
  friend std::strong_ordering operator<=>(const Rational& lhs, const Rational& rhs) {
    const int c = cmp(lhs.value_, rhs.value_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

  int sign() const { return sgn(value_); }
  bool is_zero() const { return sign() == 0; }
  bool is_integer() const;

  double to_double() const { return value_.get_d(); }

  /// "p" for integers, "p/q" otherwise.
  std::string str() const;
  /// Always "p/q", also for integers ("3/1", "0/1").
  std::string fraction_str() const;
  /// Decimal rendering rounded to `digits` fractional digits.
  std::string decimal_str(int digits = 12) const;

  std::string numerator_str() const;
  std::string denominator_str() const;
  /// Number of bits of the denominator.
  std::size_t denominator_bits() const;

  /// Largest multiple of 2^-bits that is <= |this| in magnitude, sign kept
  /// (rounds toward zero). Identity when the denominator already fits.
  Rational truncate_to_denominator_bits(unsigned bits) const;

  /// floor(this) as a Rational.
  Rational floor() const;

  const mpq_class& raw() const { return value_; }

 private:
  mpq_class value_{0};
};

inline Rational abs(const Rational& r) { return r.sign() < 0 ? -r : r; }
inline const Rational& min(const Rational& a, const Rational& b) { return b < a ? b : a; }
inline const Rational& max(const Rational& a, const Rational& b) { return a < b ? b : a; }

std::ostream& operator<<(std::ostream& os, const Rational& r);

}  // namespace adwords
