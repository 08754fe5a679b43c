#include <doctest.h>

#include "invbinom/definability.hpp"

using namespace invbinom;

namespace {

DefinabilityReport analyze(const Rational& q, Prime p, std::uint64_t depth = 8) {
  return analyze_definability(PadicIntegerSpec::from_rational(q, p), depth);
}

void check_rows(const DefinabilityReport& r) {
  for (const auto& row : r.rows) CHECK(row.status != Status::fail);
}

}  // namespace

TEST_CASE("-1 gives Cauchy evidence") {
  for (Prime p : {2u, 3u, 5u}) {
    auto r = analyze(Rational(-1), p);
    CHECK(r.theorem_tag == "minus-one");
    CHECK(r.verdict == Verdict::cauchy_evidence);
    CHECK(r.expected_verdict == Verdict::cauchy_evidence);
    check_rows(r);
    // digits are all p-1, so x_n changes at every n
    CHECK(r.rows.size() == 9);
    CHECK_FALSE(r.truncated);
  }
}

TEST_CASE("negative integers below -1 give divergence evidence") {
  struct Case { long q; Prime p; };
  for (auto [q, p] : {Case{-2, 2}, Case{-4, 2}, Case{-3, 3}, Case{-2, 5}}) {
    auto r = analyze(Rational(q), p);
    CHECK(r.theorem_tag == "negative-integer");
    CHECK(r.verdict == Verdict::divergence_evidence);
    check_rows(r);
    std::size_t checked = 0;
    for (const auto& row : r.rows) checked += row.status == Status::pass;
    CHECK(checked > 0);
  }
}

TEST_CASE("an odd non-integer diverges") {
  auto r = analyze(Rational::parse("1/3"), 5);
  CHECK(r.theorem_tag == "odd-non-integer");
  CHECK(r.verdict == Verdict::divergence_evidence);
  check_rows(r);
}

TEST_CASE("a sparse binary expansion gives Cauchy evidence") {
  auto r = analyze_definability(PadicIntegerSpec::from_sparse2({1, 4, 21}), 21);
  CHECK(r.theorem_tag == "sparse-binary");
  CHECK(r.verdict == Verdict::cauchy_evidence);
  check_rows(r);
  REQUIRE(r.rows.size() == 4);
  CHECK(r.rows[0].x_n == "0");
  CHECK(r.rows[1].n == 1);
  CHECK(r.rows[2].n == 4);
  CHECK(r.rows[3].n == 21);
  CHECK(r.rows[1].expected == "nu_diff>=1");
  CHECK(r.rows[2].expected == "nu_diff>=2");
}

TEST_CASE("natural numbers are eventually constant") {
  auto r = analyze_definability(PadicIntegerSpec::from_digits(3, {1, 2}), 6);
  CHECK(r.verdict == Verdict::cauchy_evidence);
  CHECK(r.rows.size() == 2);
}

TEST_CASE("large partial sums truncate the window") {
  auto deep = analyze(Rational(-1), 5, 10);  // x_10 = 5^11 - 1 is past the default cap
  CHECK(deep.truncated);
  CHECK(deep.rows.size() == 10);
  EngineCaps caps;
  caps.modular_p2_cap = 1000;
  auto r = analyze_definability(PadicIntegerSpec::from_rational(Rational(-1), 2), 20, caps);
  CHECK(r.truncated);
  CHECK(r.notes.find("cap exceeded") != std::string::npos);
}

TEST_CASE("discontinuity witnesses") {
  struct Case { std::uint64_t n; int e; Prime p; };
  for (auto [n, e, p] : {Case{0, 1, 2}, Case{14, 3, 2}, Case{0, 4, 2}, Case{5, 2, 3}, Case{1, 1, 5}, Case{12, 1, 23}}) {
    auto w = find_discontinuity_witness(n, e, p);
    CHECK(w.nu_metric == e);
    CHECK(w.nu_image < 0);
    CHECK(w.m == static_cast<std::uint64_t>(prime_power(p, w.L).get_ui() - (w.k + 1)));
    CHECK(w.exact_checked);
  }
  auto w = find_discontinuity_witness(14, 3);
  CHECK(w.m == 8182);
  auto z = find_discontinuity_witness(0, 1, 2, 10);
  CHECK(z.m == 1022);
  CHECK(z.nu_image == -9);
  CHECK_THROWS_AS(find_discontinuity_witness(0, 1, 2, 1), std::invalid_argument);
  CHECK_THROWS_AS(find_discontinuity_witness(0, 0), std::invalid_argument);
  EngineCaps caps;
  caps.modular_p2_cap = 100;
  CHECK_THROWS_AS(find_discontinuity_witness(14, 3, 2, std::nullopt, caps), CapExceeded);
}
