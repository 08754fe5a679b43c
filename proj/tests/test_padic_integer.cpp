#include <doctest.h>

#include "gen.hpp"
#include "invbinom/padic_integer.hpp"

using namespace invbinom;

TEST_CASE("digits of rationals") {
  CHECK(digits_of_rational(Rational(-1), 2, 4) == std::vector<std::uint64_t>{1, 1, 1, 1});
  CHECK(digits_of_rational(Rational(-1), 5, 3) == std::vector<std::uint64_t>{4, 4, 4});
  // 1/3 in Z_5: 3 * 2 = 6 == 1, so e_0 = 2
  CHECK(digits_of_rational(Rational::parse("1/3"), 5, 1) == std::vector<std::uint64_t>{2});
  CHECK_THROWS(digits_of_rational(Rational::parse("1/2"), 2, 3));
}

TEST_CASE("spec forms") {
  auto d = PadicIntegerSpec::from_digits(3, {1, 2}, {0, 1});
  CHECK(d.digits(6) == std::vector<std::uint64_t>{1, 2, 0, 1, 0, 1});
  CHECK_FALSE(d.is_natural());
  auto s = PadicIntegerSpec::from_sparse2({1, 4, 21});
  CHECK(s.digits(5) == std::vector<std::uint64_t>{0, 1, 0, 0, 1});
  CHECK(partial_sum(s, 21) == (1 << 1) + (1 << 4) + (1 << 21));
  auto nat = PadicIntegerSpec::from_digits(2, {1, 0, 1});
  CHECK(nat.is_natural());
  CHECK(*nat.as_rational() == Rational(5));
  CHECK(PadicIntegerSpec::from_rational(Rational(-1), 2).as_rational() == Rational(-1));
}

TEST_CASE("property: partial sums converge to the rational") {
  testgen::Gen g(61);
  for (int it = 0; it < 200; ++it) {
    Prime p = testgen::kSmallPrimes[g.below(7)];
    Rational q = g.p_integral(p, 20);
    auto spec = PadicIntegerSpec::from_rational(q, p);
    std::uint64_t n = g.below(30);
    // q - x_n is divisible by p^{n+1}
    Rational r = q - Rational(partial_sum(spec, n));
    if (!r.is_zero()) CHECK(valuation_rational(r, p) >= static_cast<std::int64_t>(n + 1));
    for (auto dgt : spec.digits(n + 1)) CHECK(dgt < p);
  }
}

TEST_CASE("property: periodic digits denote their rational") {
  testgen::Gen g(62);
  for (int it = 0; it < 100; ++it) {
    Prime p = testgen::kSmallPrimes[g.below(7)];
    std::vector<std::uint64_t> pre(g.below(4)), per(1 + g.below(3));
    for (auto& x : pre) x = g.below(p);
    for (auto& x : per) x = g.below(p);
    auto spec = PadicIntegerSpec::from_digits(p, pre, per);
    auto q = spec.as_rational();
    REQUIRE(q);
    CHECK(digits_of_rational(*q, p, 20) == spec.digits(20));
  }
}
