#include <doctest.h>

#include "gen.hpp"
#include "invbinom/binomial.hpp"

using namespace invbinom;

TEST_CASE("digit sums and Legendre") {
  CHECK(alpha_p(10, 2) == 2);
  CHECK(alpha_p(100, 3) == 4);  // 10201
  CHECK(nu_factorial(100, 5) == 24);
  CHECK(nu_factorial(0, 2) == 0);
  CHECK(nu_binomial(10, 3, 2) == 3);  // 120
  CHECK(nu_binomial(8, 4, 2) == 1);   // 70
  CHECK_THROWS_AS(nu_binomial(3, 4, 2), std::domain_error);
  CHECK(carry_profile(8, 4, 2).carries == 1);
}

TEST_CASE("exact binomials") {
  CHECK(binomial_exact(10, 3) == 120);
  CHECK(binomial_exact(0, 0) == 1);
  CHECK(binomial_exact(60, 30).get_str() == "118264581564861424");
}

TEST_CASE("property: Kummer and Legendre agree with exact binomials") {
  testgen::Gen g(31);
  for (int it = 0; it < 300; ++it) {
    Prime p = testgen::kSmallPrimes[g.below(7)];
    std::uint64_t n = g.below(400), k = g.below(n + 1);
    BigInt c = binomial_exact(n, k);
    CHECK(nu_binomial(n, k, p) == static_cast<std::uint64_t>(valuation(c, p)));
    CHECK(carry_profile(n, k, p).carries == nu_binomial(n, k, p));
  }
}

TEST_CASE("property: binomial rows match exact values") {
  testgen::Gen g(32);
  for (int it = 0; it < 40; ++it) {
    Prime p = testgen::kSmallPrimes[g.below(7)];
    std::uint64_t n = g.below(200);
    int N = static_cast<int>(g.between(1, 12));
    BinomialRow row = binomial_row(n, p, N);
    BinomialRow inv = binomial_row(n, p, N, true);
    for (std::uint64_t k = 0; k <= n; ++k) {
      Rational c(binomial_exact(n, k));
      CHECK(agrees(row.at(k), PadicValue::embed(c, p, N)));
      CHECK(agrees(inv.at(k), PadicValue::embed(Rational(1) / c, p, N)));
      CHECK(agrees(binomial_padic(n, k, p, N), PadicValue::embed(c, p, N)));
    }
  }
}
