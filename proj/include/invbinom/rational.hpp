#pragma once

#include <cstdint>
#include <gmpxx.h>
#include <iosfwd>
#include <stdexcept>
#include <string>

namespace invbinom {

using BigInt = mpz_class;
using Prime = std::uint64_t;

/// Exact fraction in lowest terms with a positive denominator.
/// Zero is stored as 0/1.
class Rational {
 public:
  Rational() = default;
  Rational(long v) : q_(v) {}
  Rational(const BigInt& v) : q_(v) {}
  Rational(const BigInt& num, const BigInt& den);

  /// Parses "a" or "a/b" (optional leading minus).
  static Rational parse(const std::string& text);

  BigInt numerator() const { return q_.get_num(); }
  BigInt denominator() const { return q_.get_den(); }
  const mpq_class& raw() const { return q_; }

  bool is_zero() const { return sgn(q_) == 0; }
  int sign() const { return sgn(q_); }
  std::string to_string() const { return q_.get_str(); }

  Rational operator-() const { return from_raw(-q_); }
  Rational& operator+=(const Rational& o) { q_ += o.q_; return *this; }
  Rational& operator-=(const Rational& o) { q_ -= o.q_; return *this; }
  Rational& operator*=(const Rational& o) { q_ *= o.q_; return *this; }
  Rational& operator/=(const Rational& o);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
  friend bool operator==(const Rational& a, const Rational& b) { return a.q_ == b.q_; }
  friend bool operator<(const Rational& a, const Rational& b) { return a.q_ < b.q_; }

  static Rational from_raw(mpq_class q);

 private:
  mpq_class q_{0};
};

std::ostream& operator<<(std::ostream& os, const Rational& q);

/// Exponent of p in |n|, n != 0.
std::int64_t valuation(const BigInt& n, Prime p);

/// nu_p(num) - nu_p(den). Throws std::domain_error for zero.
std::int64_t valuation_rational(const Rational& q, Prime p);

/// Strips every factor p from n, returning the count.
std::int64_t strip_prime(BigInt& n, Prime p);

/// Exponent of p in n for machine integers, n != 0.
inline int valuation_u64(std::uint64_t n, Prime p) {
  int v = 0;
  while (n % p == 0) {
    n /= p;
    ++v;
  }
  return v;
}

BigInt prime_power(Prime p, std::uint64_t e);

}  // namespace invbinom
