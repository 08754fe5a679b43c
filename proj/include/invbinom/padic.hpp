#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

#include "invbinom/rational.hpp"

namespace invbinom {

/// Default relative precision (p-adic digits) used when a caller does not ask
/// for one.
inline constexpr int kDefaultPrecision = 32;

/// Raised when a cancellation consumes every known digit. An exact zero is
/// never inferred from finite data.
class PrecisionExhausted : public std::runtime_error {
 public:
  PrecisionExhausted(std::int64_t known_to, const std::string& what)
      : std::runtime_error(what), known_to_(known_to) {}
  /// Absolute precision of the operands: the result is 0 mod p^known_to().
  std::int64_t known_to() const { return known_to_; }

 private:
  std::int64_t known_to_;
};

/// A p-adic number u * p^v + O(p^(v+N)) with p not dividing u and 0 < u < p^N,
/// or an exact zero. Immutable.
class PadicValue {
 public:
  enum class Kind { exact_zero, approx };

  static PadicValue zero(Prime p);
  /// `unit` is reduced mod p^N; throws if p divides it.
  static PadicValue approx(Prime p, std::int64_t valuation, const BigInt& unit, int precision);
  /// Embeds an exact rational at relative precision N; zero embeds as exact zero.
  static PadicValue embed(const Rational& q, Prime p, int precision = kDefaultPrecision);

  Prime prime() const { return p_; }
  Kind kind() const { return kind_; }
  bool is_exact_zero() const { return kind_ == Kind::exact_zero; }
  /// Throws for exact zero.
  std::int64_t valuation() const;
  const BigInt& unit() const { return unit_; }
  int precision() const { return n_; }
  /// v + N: the value is known modulo p^(v+N).
  std::int64_t absolute_precision() const;

  /// Drops relative digits down to `precision` (no-op when already coarser).
  PadicValue truncated(int precision) const;

  /// Residue of the value mod p^digits. Requires v >= 0 (p-integral) and
  /// digits <= absolute precision.
  BigInt residue(std::int64_t digits) const;

  /// Base-p digits of the unit, least significant first.
  std::string unit_digits() const;

  PadicValue operator-() const;

  std::string to_string() const;

 private:
  PadicValue(Prime p, Kind k, std::int64_t v, BigInt u, int n)
      : p_(p), kind_(k), v_(v), unit_(std::move(u)), n_(n) {}

  Prime p_ = 2;
  Kind kind_ = Kind::exact_zero;
  std::int64_t v_ = 0;
  BigInt unit_;
  int n_ = 0;
};

enum class ArithOp { add, sub, mul, div };

/// Precision-tracked arithmetic. add/sub may raise PrecisionExhausted; div by
/// exact zero raises std::domain_error("division by zero").
PadicValue padic_arith(const PadicValue& a, const PadicValue& b, ArithOp op);

inline PadicValue operator+(const PadicValue& a, const PadicValue& b) { return padic_arith(a, b, ArithOp::add); }
inline PadicValue operator-(const PadicValue& a, const PadicValue& b) { return padic_arith(a, b, ArithOp::sub); }
inline PadicValue operator*(const PadicValue& a, const PadicValue& b) { return padic_arith(a, b, ArithOp::mul); }
inline PadicValue operator/(const PadicValue& a, const PadicValue& b) { return padic_arith(a, b, ArithOp::div); }

/// A certified valuation: exact, or only a lower bound when the two operands
/// agree on every digit either of them knows.
struct ValuationBound {
  std::int64_t value = 0;
  bool exact = true;
  bool infinite = false;  // both operands exact and equal

  bool at_least(std::int64_t m) const { return infinite || value >= m; }
  std::string to_string() const;
};

/// nu_p(a - b) with certification.
ValuationBound diff_valuation(const PadicValue& a, const PadicValue& b);

/// True when a and b agree on all digits both of them claim.
bool agrees(const PadicValue& a, const PadicValue& b);

}  // namespace invbinom
