#include <doctest.h>

#include <vector>

#include "gen.hpp"
#include "invbinom/fsum.hpp"

using namespace invbinom;

TEST_CASE("small values of f") {
  CHECK(f_exact(0) == Rational(1));
  CHECK(f_exact(1) == Rational(2));
  CHECK(f_exact(6) == Rational::parse("151/60"));
  CHECK(f_exact(7) == Rational::parse("256/105"));
  CHECK(f_recursive(7) == Rational::parse("256/105"));
  CHECK(f_exact_identity(6) == Rational::parse("151/60"));
}

TEST_CASE("exact engines agree for n <= 300") {
  std::vector<Rational> table = f_recursive_table(300);
  for (std::uint64_t n = 0; n <= 300; ++n) {
    Rational f = f_exact(n);
    CHECK(table[n] == f);
    CHECK(f_exact_identity(n) == f);
    if (n >= 1) CHECK(f_previous(table[n], n) == table[n - 1]);
  }
}

TEST_CASE("the identity engine keeps agreeing at larger n") {
  for (std::uint64_t n : {1000u, 1023u, 2047u, 3000u}) CHECK(f_exact_identity(n) == f_recursive(n));
}

TEST_CASE("p-adic engines agree with exact values") {
  std::vector<Rational> table = f_recursive_table(300);
  for (Prime p : testgen::kSmallPrimes) {
    for (std::uint64_t n = 0; n <= 300; n += (p == 2 ? 1 : 3)) {
      PadicValue want = PadicValue::embed(table[n], p, 10);
      PadicValue got = f_padic(n, p, 10);
      CHECK(got.precision() == 10);
      CHECK(got.valuation() == valuation_rational(table[n], p));
      CHECK(agrees(got, want));
      CHECK(agrees(f_padic_direct(n, p, 10, 64), want));
    }
  }
}

TEST_CASE("f_padic_many returns values in the requested order") {
  std::vector<Rational> table = f_recursive_table(400);
  for (Prime p : {Prime{2}, Prime{5}, Prime{23}}) {
    std::vector<std::uint64_t> ns = {0, 3, 22, 45, 46, 128, 399};
    auto vals = f_padic_many(p, 8, ns);
    REQUIRE(vals.size() == ns.size());
    for (std::size_t i = 0; i < ns.size(); ++i) CHECK(agrees(vals[i], PadicValue::embed(table[ns[i]], p, 8)));
  }
}

TEST_CASE("property: certified difference valuations match exact arithmetic") {
  std::vector<Rational> table = f_recursive_table(600);
  testgen::Gen g(41);
  for (int it = 0; it < 150; ++it) {
    Prime p = testgen::kSmallPrimes[g.below(7)];
    std::uint64_t m = g.below(601), n = g.below(601);
    if (m == n) continue;
    CHECK(f_diff_valuation(m, n, p) == valuation_rational(table[m] - table[n], p));
  }
}

TEST_CASE("caps raise CapExceeded") {
  EngineCaps caps;
  caps.exact_n_cap = 10;
  caps.modular_p2_cap = 100;
  caps.modular_odd_cap = 100;
  CHECK_THROWS_AS(f_exact(11, caps), CapExceeded);
  CHECK_NOTHROW(f_exact(10, caps));
  CHECK_THROWS_AS(f_padic(101, 2, 4, caps), CapExceeded);
  CHECK_THROWS_AS(f_padic(101, 3, 4, caps), CapExceeded);
  try {
    f_exact(11, caps);
  } catch (const CapExceeded& e) {
    CHECK(e.limit() == 10);
  }
}

TEST_CASE("auxiliary sums") {
  CHECK(odd_reciprocal_sum(3) == Rational::parse("23/15"));
  auto sums = odd_reciprocal_sums(5);
  CHECK(sums[0] == Rational(0));
  CHECK(sums[3] == odd_reciprocal_sum(3));
  CHECK(harmonic(4) == Rational::parse("25/12"));
  std::vector<std::int64_t> args = {1, 3, 5};
  CHECK(elementary_symmetric(std::span<const std::int64_t>(args), 0) == 1);
  CHECK(elementary_symmetric(std::span<const std::int64_t>(args), 2) == 23);
  CHECK(elementary_symmetric(std::span<const std::int64_t>(args), 3) == 15);
  CHECK(inverse_binomial_sum(6, 0, 6) == f_exact(6));
  CHECK(inverse_binomial_sum(6, 2, 3) == Rational::parse("1/15") + Rational::parse("1/20"));
  for (Prime p : {3u, 5u, 7u, 11u, 13u, 1093u}) CHECK(signed_reciprocal_sum(p).equal());
}
