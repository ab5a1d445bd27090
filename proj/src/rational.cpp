#include "adwords/rational.hpp"

#include <cmath>
#include <ostream>
#include <stdexcept>

namespace adwords {

namespace {

mpz_class parse_integer(std::string_view digits, std::string_view whole) {
  if (digits.empty()) throw std::invalid_argument("malformed number: '" + std::string(whole) + "'");
  for (char c : digits) {
    if (c < '0' || c > '9') {
      throw std::invalid_argument("malformed number: '" + std::string(whole) + "'");
    }
  }
  return mpz_class(std::string(digits), 10);
}

// Unsigned decimal "12", "12.5", ".5".
mpq_class parse_decimal(std::string_view text, std::string_view whole) {
  const auto dot = text.find('.');
  if (dot == std::string_view::npos) return mpq_class(parse_integer(text, whole));
  const auto int_part = text.substr(0, dot);
  const auto frac_part = text.substr(dot + 1);
  if (int_part.empty() && frac_part.empty()) {
    throw std::invalid_argument("malformed number: '" + std::string(whole) + "'");
  }
  mpz_class integer = int_part.empty() ? mpz_class(0) : parse_integer(int_part, whole);
  if (frac_part.empty()) return mpq_class(integer);
  mpz_class frac = parse_integer(frac_part, whole);
  mpz_class scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, frac_part.size());
  mpq_class out(integer * scale + frac, scale);
  out.canonicalize();
  return out;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

}  // namespace

Rational::Rational(long numerator, long denominator) {
  if (denominator == 0) throw std::domain_error("rational with zero denominator");
  value_ = mpq_class(numerator, denominator);
  value_.canonicalize();
}

Rational::Rational(mpq_class value) : value_(std::move(value)) { value_.canonicalize(); }

Rational Rational::parse(std::string_view text) {
  const std::string_view whole = text;
  text = trim(text);
  bool negative = false;
  if (!text.empty() && (text.front() == '-' || text.front() == '+')) {
    negative = text.front() == '-';
    text.remove_prefix(1);
  }
  mpq_class value;
  if (const auto slash = text.find('/'); slash != std::string_view::npos) {
    const mpq_class num = parse_decimal(trim(text.substr(0, slash)), whole);
    const mpq_class den = parse_decimal(trim(text.substr(slash + 1)), whole);
    if (sgn(den) == 0) throw std::invalid_argument("zero denominator in '" + std::string(whole) + "'");
    value = num / den;
  } else {
    value = parse_decimal(text, whole);
  }
  if (negative) value = -value;
  return Rational(value);
}

Rational Rational::from_double(double value) {
  if (!std::isfinite(value)) throw std::domain_error("cannot convert non-finite double to rational");
  mpq_class q;
  mpq_set_d(q.get_mpq_t(), value);
  return Rational(q);
}

Rational Rational::power_of_two(int exponent) {
  mpz_class p = 1;
  const unsigned e = static_cast<unsigned>(exponent < 0 ? -exponent : exponent);
  mpz_mul_2exp(p.get_mpz_t(), p.get_mpz_t(), e);
  return exponent >= 0 ? Rational(mpq_class(p)) : Rational(mpq_class(mpz_class(1), p));
}

Rational& Rational::operator+=(const Rational& rhs) {
  value_ += rhs.value_;
  return *this;
}
Rational& Rational::operator-=(const Rational& rhs) {
  value_ -= rhs.value_;
  return *this;
}
Rational& Rational::operator*=(const Rational& rhs) {
  value_ *= rhs.value_;
  return *this;
}
Rational& Rational::operator/=(const Rational& rhs) {
  if (rhs.is_zero()) throw std::domain_error("rational division by zero");
  value_ /= rhs.value_;
  return *this;
}

Rational Rational::operator-() const { return Rational(mpq_class(-value_)); }

bool Rational::is_integer() const { return value_.get_den() == 1; }

std::string Rational::str() const {
  if (is_integer()) return value_.get_num().get_str();
  return value_.get_num().get_str() + "/" + value_.get_den().get_str();
}

std::string Rational::fraction_str() const {
  return value_.get_num().get_str() + "/" + value_.get_den().get_str();
}

std::string Rational::decimal_str(int digits) const {
  mpz_class scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(digits));
  const mpq_class scaled = abs(value_) * scale;
  // round half up on the magnitude
  mpz_class q = (scaled.get_num() * 2 + scaled.get_den()) / (scaled.get_den() * 2);
  std::string s = q.get_str();
  if (digits > 0) {
    if (s.size() <= static_cast<std::size_t>(digits)) {
      s.insert(0, static_cast<std::size_t>(digits) + 1 - s.size(), '0');
    }
    s.insert(s.size() - static_cast<std::size_t>(digits), ".");
    while (s.back() == '0') s.pop_back();
    if (s.back() == '.') s.pop_back();
  }
  if (sign() < 0 && s != "0") s.insert(0, "-");
  return s;
}

std::string Rational::numerator_str() const { return value_.get_num().get_str(); }
std::string Rational::denominator_str() const { return value_.get_den().get_str(); }

std::size_t Rational::denominator_bits() const {
  return mpz_sizeinbase(value_.get_den().get_mpz_t(), 2);
}

Rational Rational::truncate_to_denominator_bits(unsigned bits) const {
  mpz_class den = 1;
  mpz_mul_2exp(den.get_mpz_t(), den.get_mpz_t(), bits);
  if (mpz_cmp(value_.get_den().get_mpz_t(), den.get_mpz_t()) <= 0) return *this;
  const mpz_class scaled_num = value_.get_num() * den;
  mpz_class q;
  mpz_tdiv_q(q.get_mpz_t(), scaled_num.get_mpz_t(), value_.get_den().get_mpz_t());
  return Rational(mpq_class(q, den));
}

Rational Rational::floor() const {
  mpz_class q;
  mpz_fdiv_q(q.get_mpz_t(), value_.get_num().get_mpz_t(), value_.get_den().get_mpz_t());
  return Rational(mpq_class(q));
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

}  // namespace adwords
