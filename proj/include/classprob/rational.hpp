#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace classprob {

using BigInt = mpz_class;

/// Exact fraction with arbitrary-precision numerator and denominator.
///
/// Always held in lowest terms with a positive denominator; no operation
/// rounds. Backed by GMP's mpq_class, which canonicalizes after every
/// arithmetic step.
class Rational {
public:
  Rational() = default;
  Rational(long value) : value_(value) {}  // NOLINT(google-explicit-constructor)
  Rational(int value) : value_(value) {}   // NOLINT(google-explicit-constructor)
  Rational(unsigned long value) : value_(value) {}  // NOLINT(google-explicit-constructor)
  explicit Rational(const BigInt& value) : value_(value) {}
  Rational(const BigInt& numerator, const BigInt& denominator);
  Rational(long numerator, long denominator);

  /// Exact binary value of a finite double.
  static Rational from_double(double value);

  /// Parses "p/q", an integer, or a decimal literal such as "-0.05" or
  /// "1.5e-3". Decimals convert exactly (0.1 is 1/10, not the double).
  static Rational parse(std::string_view text);

  BigInt numerator() const { return value_.get_num(); }
  BigInt denominator() const { return value_.get_den(); }

  int sign() const { return sgn(value_); }
  bool is_integer() const { return value_.get_den() == 1; }

  double to_double() const;

  /// "p/q", or "p" when the denominator is 1.
  std::string str() const;
  /// Fixed-point decimal with `digits` places, rounded half away from zero.
  std::string to_fixed(int digits) const;
  /// Decimal with `digits` significant digits (6 by default).
  std::string to_significant(int digits = 6) const;

  Rational& operator+=(const Rational& rhs) { value_ += rhs.value_; return *this; }
  Rational& operator-=(const Rational& rhs) { value_ -= rhs.value_; return *this; }
  Rational& operator*=(const Rational& rhs) { value_ *= rhs.value_; return *this; }
  Rational& operator/=(const Rational& rhs);

  friend Rational operator+(Rational lhs, const Rational& rhs) { return lhs += rhs; }
  friend Rational operator-(Rational lhs, const Rational& rhs) { return lhs -= rhs; }
  friend Rational operator*(Rational lhs, const Rational& rhs) { return lhs *= rhs; }
  friend Rational operator/(Rational lhs, const Rational& rhs) { return lhs /= rhs; }
  Rational operator-() const { return Rational(mpq_class(-value_)); }

  friend bool operator==(const Rational& a, const Rational& b) { return a.value_ == b.value_; }
  friend bool operator!=(const Rational& a, const Rational& b) { return a.value_ != b.value_; }
  friend bool operator<(const Rational& a, const Rational& b) { return a.value_ < b.value_; }
  friend bool operator<=(const Rational& a, const Rational& b) { return a.value_ <= b.value_; }
  friend bool operator>(const Rational& a, const Rational& b) { return a.value_ > b.value_; }
  friend bool operator>=(const Rational& a, const Rational& b) { return a.value_ >= b.value_; }

  const mpq_class& raw() const { return value_; }

private:
  explicit Rational(mpq_class value) : value_(std::move(value)) { value_.canonicalize(); }
  mpq_class value_;
};

Rational abs(const Rational& x);
/// x^exponent; a negative exponent requires x != 0.
Rational pow(const Rational& x, long exponent);
BigInt floor(const Rational& x);
BigInt ceil(const Rational& x);

/// Binomial coefficient C(n, k); zero outside 0 <= k <= n.
BigInt binomial(long n, long k);
BigInt factorial(long n);

std::ostream& operator<<(std::ostream& os, const Rational& r);

}  // namespace classprob
