#include "doctest.h"

#include <random>

#include "classprob/errors.hpp"
#include "classprob/rational.hpp"

using classprob::BigInt;
using classprob::Rational;

TEST_CASE("lowest terms and positive denominator") {
  Rational r(6, -8);
  CHECK(r.numerator() == -3);
  CHECK(r.denominator() == 4);
  CHECK(r.str() == "-3/4");
  CHECK(Rational(10, 5).str() == "2");
  CHECK_THROWS_AS(Rational(1, 0), classprob::DomainError);
}

TEST_CASE("parse accepts fractions, integers and exact decimals") {
  CHECK(Rational::parse("25/216") == Rational(25, 216));
  CHECK(Rational::parse(" -7 ") == Rational(-7));
  CHECK(Rational::parse("0.1") == Rational(1, 10));
  CHECK(Rational::parse("1.5e-3") == Rational(3, 2000));
  CHECK(Rational::parse("2E2") == Rational(200));
  CHECK(Rational::parse("0.5/3") == Rational(1, 6));
  CHECK_THROWS_AS(Rational::parse("abc"), classprob::DomainError);
  CHECK_THROWS_AS(Rational::parse("1/0"), classprob::DomainError);
  CHECK_THROWS_AS(Rational::parse(""), classprob::DomainError);
}

TEST_CASE("decimal rendering") {
  CHECK(Rational(671, 1296).to_fixed(3) == "0.518");
  CHECK(Rational(-1, 8).to_fixed(2) == "-0.13");
  CHECK(Rational(1, 3).to_fixed(0) == "0");
  CHECK(Rational(5, 2).to_fixed(0) == "3");
  CHECK(Rational(-1, 1000).to_fixed(2) == "0.00");
  CHECK(Rational(25, 216).to_significant(6) == "0.115741");
  CHECK(Rational(11, 24).to_significant(3) == "0.458");
  CHECK(Rational(1).to_significant() == "1");
  CHECK(Rational(244140625).to_significant() == "2.44141e+08");
  CHECK(Rational(1, 3000000).to_significant(3) == "3.33e-07");
  CHECK(Rational(999999, 1000000).to_significant(3) == "1");
  CHECK(Rational(0).to_significant() == "0");
  CHECK(Rational(-123, 10).to_significant(6) == "-12.3");
}

TEST_CASE("floor, ceil, pow") {
  CHECK(floor(Rational(-7, 2)) == -4);
  CHECK(ceil(Rational(-7, 2)) == -3);
  CHECK(floor(Rational(4)) == 4);
  CHECK(pow(Rational(2, 3), 3) == Rational(8, 27));
  CHECK(pow(Rational(2, 3), -2) == Rational(9, 4));
  CHECK(pow(Rational(5), 0) == Rational(1));
  CHECK_THROWS_AS(pow(Rational(0), -1), classprob::DomainError);
}

TEST_CASE("from_double is exact") {
  CHECK(Rational::from_double(0.5) == Rational(1, 2));
  CHECK(Rational::from_double(0.1) != Rational(1, 10));
  CHECK(Rational::from_double(0.1).to_double() == 0.1);
}

TEST_CASE("random arithmetic stays canonical") {
  std::mt19937_64 gen(7);
  std::uniform_int_distribution<long> dist(-50, 50);
  for (int i = 0; i < 500; ++i) {
    long d1 = dist(gen), d2 = dist(gen);
    if (d1 == 0) d1 = 1;
    if (d2 == 0) d2 = -1;
    Rational a(dist(gen), d1), b(dist(gen), d2);
    for (const Rational& r : {a + b, a - b, a * b}) {
      CHECK(r.denominator() > 0);
      BigInt g;
      mpz_gcd(g.get_mpz_t(), r.numerator().get_mpz_t(), r.denominator().get_mpz_t());
      CHECK(g == 1);
    }
    CHECK((a + b) - b == a);
  }
}
