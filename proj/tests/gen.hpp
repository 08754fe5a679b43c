#pragma once

// Seeded generators for the property tests.

#include <cstdint>
#include <random>

#include "invbinom/rational.hpp"

namespace testgen {

struct Gen {
  explicit Gen(std::uint64_t seed) : rng(seed) {}

  std::uint64_t below(std::uint64_t n) { return rng() % n; }
  std::uint64_t between(std::uint64_t lo, std::uint64_t hi) { return lo + below(hi - lo + 1); }
  std::int64_t signed_between(std::int64_t lo, std::int64_t hi) {
    return lo + static_cast<std::int64_t>(below(static_cast<std::uint64_t>(hi - lo + 1)));
  }

  /// Nonzero rational with numerator and denominator up to `bits` bits.
  invbinom::Rational rational(int bits = 40) {
    invbinom::BigInt num = 0, den = 0;
    while (num == 0) num = invbinom::BigInt(static_cast<unsigned long>(rng() >> (64 - bits)));
    while (den == 0) den = invbinom::BigInt(static_cast<unsigned long>(rng() >> (64 - bits)));
    if (rng() & 1) num = -num;
    return invbinom::Rational(num, den);
  }

  /// Rational whose denominator is prime to p.
  invbinom::Rational p_integral(invbinom::Prime p, int bits = 40) {
    invbinom::Rational q = rational(bits);
    invbinom::BigInt den = q.denominator();
    while (mpz_divisible_ui_p(den.get_mpz_t(), static_cast<unsigned long>(p))) den /= static_cast<unsigned long>(p);
    return invbinom::Rational(q.numerator(), den);
  }

  std::mt19937_64 rng;
};

inline constexpr invbinom::Prime kSmallPrimes[] = {2, 3, 5, 7, 11, 13, 23};

}  // namespace testgen
