#include "classprob/rational.hpp"

#include <cctype>
#include <cmath>
#include <ostream>

#include "classprob/errors.hpp"

namespace classprob {

namespace {

BigInt pow10(unsigned long e) {
  BigInt r;
  mpz_ui_pow_ui(r.get_mpz_t(), 10, e);
  return r;
}

// Round |num|/den to the nearest integer, halves away from zero.
BigInt round_half_up(const BigInt& num, const BigInt& den) {
  BigInt twice = 2 * num + den;
  BigInt q;
  mpz_fdiv_q(q.get_mpz_t(), twice.get_mpz_t(), BigInt(2 * den).get_mpz_t());
  return q;
}

}  // namespace

Rational::Rational(const BigInt& numerator, const BigInt& denominator) {
  if (denominator == 0) throw DomainError("rational with zero denominator");
  value_ = mpq_class(numerator, denominator);
  value_.canonicalize();
}

Rational::Rational(long numerator, long denominator)
    : Rational(BigInt(numerator), BigInt(denominator)) {}

Rational Rational::from_double(double value) {
  if (!std::isfinite(value)) throw DomainError("cannot convert non-finite double to rational");
  return Rational(mpq_class(value));
}

Rational Rational::parse(std::string_view text) {
  std::string s(text);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.pop_back();
  std::size_t start = 0;
  while (start < s.size() && std::isspace(static_cast<unsigned char>(s[start]))) ++start;
  s = s.substr(start);
  if (s.empty()) throw DomainError("empty rational literal");

  if (auto slash = s.find('/'); slash != std::string::npos) {
    Rational num = parse(s.substr(0, slash));
    Rational den = parse(s.substr(slash + 1));
    if (den.sign() == 0) throw DomainError("rational with zero denominator: " + s);
    return num / den;
  }

  std::size_t i = 0;
  bool negative = false;
  if (s[i] == '+' || s[i] == '-') negative = s[i++] == '-';
  std::string digits;
  long frac_digits = 0;
  bool seen_point = false;
  for (; i < s.size(); ++i) {
    char c = s[i];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      digits += c;
      if (seen_point) ++frac_digits;
    } else if (c == '.' && !seen_point) {
      seen_point = true;
    } else {
      break;
    }
  }
  if (digits.empty()) throw DomainError("malformed rational literal: " + s);
  long exponent = 0;
  if (i < s.size()) {
    if (s[i] != 'e' && s[i] != 'E') throw DomainError("malformed rational literal: " + s);
    std::string rest = s.substr(i + 1);
    std::size_t used = 0;
    try {
      exponent = std::stol(rest, &used);
    } catch (const std::exception&) {
      throw DomainError("malformed exponent in literal: " + s);
    }
    if (used != rest.size()) throw DomainError("malformed exponent in literal: " + s);
  }
  BigInt mantissa(digits, 10);
  if (negative) mantissa = -mantissa;
  long shift = exponent - frac_digits;
  if (shift >= 0) return Rational(BigInt(mantissa * pow10(static_cast<unsigned long>(shift))));
  return Rational(mantissa, pow10(static_cast<unsigned long>(-shift)));
}

double Rational::to_double() const { return value_.get_d(); }

std::string Rational::str() const {
  if (is_integer()) return value_.get_num().get_str();
  return value_.get_str();
}

std::string Rational::to_fixed(int digits) const {
  if (digits < 0) digits = 0;
  BigInt num = value_.get_num();
  bool negative = num < 0;
  if (negative) num = -num;
  BigInt scaled = round_half_up(num * pow10(static_cast<unsigned long>(digits)), value_.get_den());
  std::string body = scaled.get_str();
  if (digits > 0) {
    if (body.size() <= static_cast<std::size_t>(digits))
      body.insert(0, static_cast<std::size_t>(digits) + 1 - body.size(), '0');
    body.insert(body.size() - static_cast<std::size_t>(digits), ".");
  }
  if (negative && scaled != 0) body.insert(0, "-");
  return body;
}

std::string Rational::to_significant(int digits) const {
  if (digits < 1) digits = 1;
  if (sign() == 0) return "0";
  BigInt num = value_.get_num();
  const BigInt& den = value_.get_den();
  bool negative = num < 0;
  if (negative) num = -num;

  // Decimal exponent e with 10^e <= |x| < 10^(e+1).
  long e = static_cast<long>(std::floor(std::log10(std::fabs(to_double()))));
  auto below = [&](long k) {  // |x| < 10^k
    return k >= 0 ? num < den * pow10(static_cast<unsigned long>(k))
                  : num * pow10(static_cast<unsigned long>(-k)) < den;
  };
  while (below(e)) --e;
  while (!below(e + 1)) ++e;

  long shift = digits - 1 - e;  // mantissa = round(|x| * 10^shift)
  BigInt mantissa = shift >= 0
                        ? round_half_up(num * pow10(static_cast<unsigned long>(shift)), den)
                        : round_half_up(num, den * pow10(static_cast<unsigned long>(-shift)));
  if (mantissa == pow10(static_cast<unsigned long>(digits))) {
    mantissa /= 10;
    ++e;
  }
  std::string m = mantissa.get_str();
  std::string out;
  if (e < -5 || e >= digits) {
    std::string frac = m.substr(1);
    while (!frac.empty() && frac.back() == '0') frac.pop_back();
    out = m.substr(0, 1) + (frac.empty() ? "" : "." + frac);
    char buf[32];
    std::snprintf(buf, sizeof buf, "e%c%02ld", e < 0 ? '-' : '+', e < 0 ? -e : e);
    out += buf;
  } else if (e < 0) {
    out = "0." + std::string(static_cast<std::size_t>(-e - 1), '0') + m;
    while (out.back() == '0') out.pop_back();
  } else {
    std::string int_part = m.substr(0, static_cast<std::size_t>(e) + 1);
    std::string frac = m.substr(static_cast<std::size_t>(e) + 1);
    while (!frac.empty() && frac.back() == '0') frac.pop_back();
    out = int_part + (frac.empty() ? "" : "." + frac);
  }
  return negative ? "-" + out : out;
}

Rational& Rational::operator/=(const Rational& rhs) {
  if (rhs.sign() == 0) throw DomainError("rational division by zero");
  value_ /= rhs.value_;
  return *this;
}

Rational abs(const Rational& x) { return x.sign() < 0 ? -x : x; }

Rational pow(const Rational& x, long exponent) {
  if (exponent < 0) {
    if (x.sign() == 0) throw DomainError("zero to a negative power");
    return Rational(1) / pow(x, -exponent);
  }
  BigInt num, den;
  mpz_pow_ui(num.get_mpz_t(), x.numerator().get_mpz_t(), static_cast<unsigned long>(exponent));
  mpz_pow_ui(den.get_mpz_t(), x.denominator().get_mpz_t(), static_cast<unsigned long>(exponent));
  return Rational(num, den);
}

BigInt floor(const Rational& x) {
  BigInt q;
  mpz_fdiv_q(q.get_mpz_t(), x.numerator().get_mpz_t(), x.denominator().get_mpz_t());
  return q;
}

BigInt ceil(const Rational& x) {
  BigInt q;
  mpz_cdiv_q(q.get_mpz_t(), x.numerator().get_mpz_t(), x.denominator().get_mpz_t());
  return q;
}

BigInt binomial(long n, long k) {
  if (n < 0 || k < 0 || k > n) return 0;
  BigInt r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return r;
}

BigInt factorial(long n) {
  if (n < 0) throw DomainError("factorial of a negative number");
  BigInt r;
  mpz_fac_ui(r.get_mpz_t(), static_cast<unsigned long>(n));
  return r;
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

}  // namespace classprob
