#pragma once

#include <cstdint>
#include <vector>

#include "invbinom/padic.hpp"
#include "invbinom/rational.hpp"

namespace invbinom {

/// Sum of the base-p digits of n.
std::uint64_t alpha_p(std::uint64_t n, Prime p);

/// nu_p(n!) by Legendre: (n - alpha_p(n)) / (p - 1).
std::uint64_t nu_factorial(std::uint64_t n, Prime p);

/// nu_p(C(n, k)) via digit sums. Throws std::domain_error for k > n.
std::uint64_t nu_binomial(std::uint64_t n, std::uint64_t k, Prime p);

/// Carries when adding k and n - k in base p (Kummer).
struct CarryProfile {
  std::uint64_t n = 0;
  std::uint64_t k = 0;
  Prime p = 2;
  std::uint64_t carries = 0;
};
CarryProfile carry_profile(std::uint64_t n, std::uint64_t k, Prime p);

/// C(n, k) exactly, by the multiplicative recurrence with exact division at
/// every step (no factorial-sized intermediates).
BigInt binomial_exact(std::uint64_t n, std::uint64_t k);

/// C(n, k) as a p-adic value with relative precision N.
PadicValue binomial_padic(std::uint64_t n, std::uint64_t k, Prime p, int precision);

/// The full row C(n, 0..n) as (valuation, unit mod p^N) pairs, computed by the
/// unit-part recurrence in O(n) residue operations. With `inverse` set the row
/// holds C(n, k)^{-1} instead.
struct BinomialRow {
  Prime p = 2;
  int precision = 1;
  std::vector<std::int64_t> valuation;
  std::vector<BigInt> unit;

  PadicValue at(std::uint64_t k) const { return PadicValue::approx(p, valuation[k], unit[k], precision); }
  PadicValue inverse_at(std::uint64_t k) const;
};
BinomialRow binomial_row(std::uint64_t n, Prime p, int precision, bool inverse = false);

}  // namespace invbinom
