#include <doctest.h>

#include "gen.hpp"
#include "invbinom/rational.hpp"

using namespace invbinom;

TEST_CASE("rationals are kept in lowest terms with a positive denominator") {
  Rational q(BigInt(6), BigInt(-4));
  CHECK(q.numerator() == -3);
  CHECK(q.denominator() == 2);
  CHECK(Rational().to_string() == "0");
  CHECK(Rational(BigInt(0), BigInt(7)).denominator() == 1);
}

TEST_CASE("parse accepts integers and fractions") {
  CHECK(Rational::parse("-3") == Rational(-3));
  CHECK(Rational::parse("10/4") == Rational(BigInt(5), BigInt(2)));
  CHECK(Rational::parse("-1/3").to_string() == "-1/3");
  CHECK_THROWS(Rational::parse("1/0"));
  CHECK_THROWS(Rational::parse("abc"));
}

TEST_CASE("division by zero throws") {
  CHECK_THROWS_AS(Rational(1) / Rational(0), std::domain_error);
  CHECK_THROWS(Rational(BigInt(1), BigInt(0)));
}

TEST_CASE("valuation of known values") {
  CHECK(valuation(BigInt(48), 2) == 4);
  CHECK(valuation(BigInt(-81), 3) == 4);
  CHECK(valuation_rational(Rational(BigInt(5), BigInt(24)), 2) == -3);
  CHECK(valuation_u64(1024, 2) == 10);
  CHECK_THROWS_AS(valuation_rational(Rational(0), 3), std::domain_error);
  CHECK(prime_power(7, 3) == 343);
  BigInt n = 2 * 2 * 2 * 5;
  CHECK(strip_prime(n, 2) == 3);
  CHECK(n == 5);
}

TEST_CASE("property: valuation is additive and ultrametric") {
  testgen::Gen g(11);
  for (int it = 0; it < 400; ++it) {
    Prime p = testgen::kSmallPrimes[g.below(7)];
    Rational a = g.rational(), b = g.rational();
    auto va = valuation_rational(a, p), vb = valuation_rational(b, p);
    CHECK(valuation_rational(a * b, p) == va + vb);
    CHECK(valuation_rational(a / b, p) == va - vb);
    Rational s = a + b;
    if (!s.is_zero()) {
      if (va != vb) CHECK(valuation_rational(s, p) == std::min(va, vb));
      else CHECK(valuation_rational(s, p) >= va);
    }
  }
}

TEST_CASE("property: string round trip") {
  testgen::Gen g(12);
  for (int it = 0; it < 200; ++it) {
    Rational a = g.rational(60);
    CHECK(Rational::parse(a.to_string()) == a);
  }
}
