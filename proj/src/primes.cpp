#include "invbinom/primes.hpp"

#include <algorithm>
#include <cmath>

#include "invbinom/residue.hpp"

namespace invbinom {

namespace {

constexpr std::uint64_t kSegment = std::uint64_t{1} << 18;

std::vector<std::uint64_t> small_primes(std::uint64_t limit) {
  std::vector<bool> composite(limit + 1, false);
  std::vector<std::uint64_t> out;
  for (std::uint64_t i = 2; i <= limit; ++i) {
    if (composite[i]) continue;
    out.push_back(i);
    for (std::uint64_t j = i * i; j <= limit; j += i) composite[j] = true;
  }
  return out;
}

}  // namespace

std::vector<Prime> primes_in_range(std::uint64_t lo, std::uint64_t hi) {
  std::vector<Prime> out;
  lo = std::max<std::uint64_t>(lo, 2);
  if (hi <= lo) return out;
  auto root = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(hi))) + 1;
  auto base = small_primes(root);
  std::vector<char> mark;
  for (std::uint64_t seg = lo; seg < hi; seg += kSegment) {
    std::uint64_t end = std::min(hi, seg + kSegment);
    mark.assign(end - seg, 1);
    for (auto q : base) {
      if (q * q >= end) break;
      std::uint64_t start = std::max(q * q, (seg + q - 1) / q * q);
      for (std::uint64_t j = start; j < end; j += q) mark[j - seg] = 0;
    }
    for (std::uint64_t i = seg; i < end; ++i)
      if (mark[i - seg]) out.push_back(i);
  }
  return out;
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t q : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    if (n % q == 0) return n == q;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while (d % 2 == 0) {
    d /= 2;
    ++s;
  }
  for (std::uint64_t a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    std::uint64_t x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool witness = true;
    for (int r = 1; r < s && witness; ++r) {
      x = mulmod(x, x, n);
      if (x == n - 1) witness = false;
    }
    if (witness) return false;
  }
  return true;
}

bool is_wieferich(Prime p) {
  if (p == 2) return false;
  auto m = static_cast<u128>(p) * p;
  if (m >> 63) {
    BigInt mod = BigInt(static_cast<unsigned long>(p)) * static_cast<unsigned long>(p);
    BigInt r;
    mpz_powm_ui(r.get_mpz_t(), BigInt(2).get_mpz_t(), static_cast<unsigned long>(p - 1), mod.get_mpz_t());
    return r == 1;
  }
  return powmod(2, p - 1, static_cast<std::uint64_t>(m)) == 1;
}

}  // namespace invbinom
