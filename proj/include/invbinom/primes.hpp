#pragma once

#include <cstdint>
#include <vector>

#include "invbinom/rational.hpp"

namespace invbinom {

/// Primes p with lo <= p < hi, ascending. Segmented sieve; memory is
/// O(sqrt(hi) + segment).
std::vector<Prime> primes_in_range(std::uint64_t lo, std::uint64_t hi);

/// Deterministic for 64-bit inputs (Miller-Rabin with a fixed base set).
bool is_prime(std::uint64_t n);

/// 2^{p-1} == 1 mod p^2.
bool is_wieferich(Prime p);

}  // namespace invbinom
