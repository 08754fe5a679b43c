#pragma once

// Residue arithmetic modulo a prime power. Two backends share one interface so
// the summation engines can be written once: ModU64 for moduli below 2^63 and
// ModBig (GMP) for everything else.

#include <cstdint>
#include <stdexcept>

#include "invbinom/rational.hpp"

namespace invbinom {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

class ModU64 {
 public:
  using value_type = u64;

  explicit ModU64(u64 modulus) : m_(modulus) {
    if (modulus < 2 || modulus >= (u64{1} << 63)) throw std::invalid_argument("ModU64 modulus out of range");
  }

  static bool fits(const BigInt& modulus) { return mpz_sizeinbase(modulus.get_mpz_t(), 2) <= 62; }

  u64 modulus() const { return m_; }
  value_type zero() const { return 0; }
  value_type one() const { return 1 % m_; }
  value_type from(u64 v) const { return v % m_; }
  value_type from(const BigInt& v) const {
    BigInt r = v % BigInt(static_cast<unsigned long>(m_));
    if (r < 0) r += static_cast<unsigned long>(m_);
    return r.get_ui();
  }

  value_type add(value_type a, value_type b) const {
    u64 s = a + b;
    return s >= m_ ? s - m_ : s;
  }
  value_type sub(value_type a, value_type b) const { return a >= b ? a - b : a + (m_ - b); }
  value_type neg(value_type a) const { return a == 0 ? 0 : m_ - a; }
  value_type mul(value_type a, value_type b) const {
    return static_cast<u64>((static_cast<u128>(a) * b) % m_);
  }
  bool is_zero(value_type a) const { return a == 0; }

  /// Inverse of a unit; throws if gcd(a, m) != 1.
  value_type inv(value_type a) const {
    std::int64_t t0 = 0, t1 = 1;
    u64 r0 = m_, r1 = a % m_;
    while (r1 != 0) {
      u64 q = r0 / r1;
      u64 r2 = r0 - q * r1;
      r0 = r1;
      r1 = r2;
      // Coefficients stay bounded by m_ in magnitude.
      __int128 t2 = static_cast<__int128>(t0) - static_cast<__int128>(q) * t1;
      t0 = t1;
      t1 = static_cast<std::int64_t>(t2);
    }
    if (r0 != 1) throw std::domain_error("residue is not a unit");
    return t0 < 0 ? static_cast<u64>(t0 + static_cast<std::int64_t>(m_)) : static_cast<u64>(t0);
  }

  value_type pow(value_type base, u64 e) const {
    value_type r = one();
    while (e) {
      if (e & 1) r = mul(r, base);
      base = mul(base, base);
      e >>= 1;
    }
    return r;
  }

  BigInt to_big(value_type a) const { return BigInt(static_cast<unsigned long>(a)); }

 private:
  u64 m_;
};

class ModBig {
 public:
  using value_type = BigInt;

  explicit ModBig(BigInt modulus) : m_(std::move(modulus)) {
    if (m_ < 2) throw std::invalid_argument("ModBig modulus out of range");
  }

  const BigInt& modulus() const { return m_; }
  value_type zero() const { return 0; }
  value_type one() const { return 1; }
  value_type from(u64 v) const { return reduce(BigInt(static_cast<unsigned long>(v))); }
  value_type from(const BigInt& v) const { return reduce(v); }

  value_type add(const value_type& a, const value_type& b) const {
    BigInt s = a + b;
    if (s >= m_) s -= m_;
    return s;
  }
  value_type sub(const value_type& a, const value_type& b) const {
    BigInt s = a - b;
    if (s < 0) s += m_;
    return s;
  }
  value_type neg(const value_type& a) const { return a == 0 ? BigInt(0) : BigInt(m_ - a); }
  value_type mul(const value_type& a, const value_type& b) const {
    BigInt r = a * b;
    mpz_mod(r.get_mpz_t(), r.get_mpz_t(), m_.get_mpz_t());
    return r;
  }
  bool is_zero(const value_type& a) const { return a == 0; }
  value_type inv(const value_type& a) const {
    BigInt r;
    if (mpz_invert(r.get_mpz_t(), a.get_mpz_t(), m_.get_mpz_t()) == 0)
      throw std::domain_error("residue is not a unit");
    return r;
  }
  value_type pow(const value_type& base, u64 e) const {
    BigInt r;
    mpz_powm_ui(r.get_mpz_t(), base.get_mpz_t(), static_cast<unsigned long>(e), m_.get_mpz_t());
    return r;
  }
  BigInt to_big(const value_type& a) const { return a; }

 private:
  value_type reduce(BigInt v) const {
    mpz_mod(v.get_mpz_t(), v.get_mpz_t(), m_.get_mpz_t());
    return v;
  }

  BigInt m_;
};

/// Runs `fn(ring)` with the cheapest backend able to hold `modulus`.
template <class Fn>
decltype(auto) with_ring(const BigInt& modulus, Fn&& fn) {
  if (ModU64::fits(modulus)) return fn(ModU64(modulus.get_ui()));
  return fn(ModBig(modulus));
}

/// (a * b) mod m for machine words.
inline u64 mulmod(u64 a, u64 b, u64 m) { return static_cast<u64>(static_cast<u128>(a) * b % m); }

inline u64 powmod(u64 base, u64 e, u64 m) {
  u64 r = 1 % m;
  base %= m;
  while (e) {
    if (e & 1) r = mulmod(r, base, m);
    base = mulmod(base, base, m);
    e >>= 1;
  }
  return r;
}

}  // namespace invbinom
