#include "invbinom/padic.hpp"

#include <algorithm>
#include <sstream>

namespace invbinom {

namespace {

void require_same_prime(const PadicValue& a, const PadicValue& b) {
  if (a.prime() != b.prime()) throw std::invalid_argument("p-adic operands over different primes");
}

BigInt mod_pow_prime(const BigInt& x, Prime p, std::int64_t n) {
  BigInt m = prime_power(p, static_cast<std::uint64_t>(n));
  BigInt r;
  mpz_mod(r.get_mpz_t(), x.get_mpz_t(), m.get_mpz_t());
  return r;
}

PadicValue add_impl(const PadicValue& a, const PadicValue& b) {
  if (a.is_exact_zero()) return b;
  if (b.is_exact_zero()) return a;
  const PadicValue& x = a.valuation() <= b.valuation() ? a : b;
  const PadicValue& y = a.valuation() <= b.valuation() ? b : a;
  const Prime p = x.prime();
  const std::int64_t d = y.valuation() - x.valuation();
  if (d > 0) {
    std::int64_t n = std::min<std::int64_t>(x.precision(), y.precision() + d);
    BigInt s = x.unit() + y.unit() * prime_power(p, static_cast<std::uint64_t>(std::min<std::int64_t>(d, n)));
    return PadicValue::approx(p, x.valuation(), mod_pow_prime(s, p, n), static_cast<int>(n));
  }
  const int m = std::min(x.precision(), y.precision());
  BigInt s = mod_pow_prime(x.unit() + y.unit(), p, m);
  if (s == 0) {
    throw PrecisionExhausted(x.valuation() + m, "precision exhausted");
  }
  std::int64_t t = strip_prime(s, p);
  return PadicValue::approx(p, x.valuation() + t, s, static_cast<int>(m - t));
}

}  // namespace

PadicValue PadicValue::zero(Prime p) {
  if (p < 2) throw std::invalid_argument("prime must be >= 2");
  return PadicValue(p, Kind::exact_zero, 0, BigInt(0), 0);
}

PadicValue PadicValue::approx(Prime p, std::int64_t valuation, const BigInt& unit, int precision) {
  if (p < 2) throw std::invalid_argument("prime must be >= 2");
  if (precision < 1) throw std::invalid_argument("relative precision must be >= 1");
  BigInt u = mod_pow_prime(unit, p, precision);
  if (mpz_divisible_ui_p(u.get_mpz_t(), static_cast<unsigned long>(p)))
    throw std::invalid_argument("unit part divisible by p");
  return PadicValue(p, Kind::approx, valuation, std::move(u), precision);
}

PadicValue PadicValue::embed(const Rational& q, Prime p, int precision) {
  if (q.is_zero()) return zero(p);
  BigInt num = q.numerator();
  BigInt den = q.denominator();
  std::int64_t v = strip_prime(num, p) - strip_prime(den, p);
  BigInt m = prime_power(p, static_cast<std::uint64_t>(precision));
  BigInt inv;
  mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), m.get_mpz_t());
  return approx(p, v, num * inv, precision);
}

std::int64_t PadicValue::valuation() const {
  if (is_exact_zero()) throw std::domain_error("valuation undefined for exact zero");
  return v_;
}

std::int64_t PadicValue::absolute_precision() const {
  if (is_exact_zero()) throw std::domain_error("exact zero has unbounded precision");
  return v_ + n_;
}

PadicValue PadicValue::truncated(int precision) const {
  if (is_exact_zero() || precision >= n_) return *this;
  return approx(p_, v_, unit_, precision);
}

BigInt PadicValue::residue(std::int64_t digits) const {
  if (digits < 0) throw std::invalid_argument("negative digit count");
  if (is_exact_zero()) return 0;
  if (v_ < 0) throw std::domain_error("residue of a non-integral p-adic value");
  if (digits > absolute_precision()) throw PrecisionExhausted(absolute_precision(), "residue beyond known precision");
  if (v_ >= digits) return 0;
  return mod_pow_prime(unit_ * prime_power(p_, static_cast<std::uint64_t>(v_)), p_, digits);
}

std::string PadicValue::unit_digits() const {
  std::ostringstream os;
  BigInt u = unit_;
  BigInt pp(static_cast<unsigned long>(p_));
  for (int i = 0; i < n_; ++i) {
    if (i) os << ',';
    BigInt d = u % pp;
    os << d.get_str();
    u /= pp;
  }
  return os.str();
}

PadicValue PadicValue::operator-() const {
  if (is_exact_zero()) return *this;
  BigInt m = prime_power(p_, static_cast<std::uint64_t>(n_));
  return PadicValue(p_, kind_, v_, m - unit_, n_);
}

std::string PadicValue::to_string() const {
  if (is_exact_zero()) return "0";
  std::ostringstream os;
  os << unit_.get_str() << "*" << p_ << "^" << v_ << " + O(" << p_ << "^" << (v_ + n_) << ")";
  return os.str();
}

PadicValue padic_arith(const PadicValue& a, const PadicValue& b, ArithOp op) {
  require_same_prime(a, b);
  const Prime p = a.prime();
  switch (op) {
    case ArithOp::add:
      return add_impl(a, b);
    case ArithOp::sub:
      return add_impl(a, -b);
    case ArithOp::mul: {
      if (a.is_exact_zero() || b.is_exact_zero()) return PadicValue::zero(p);
      int n = std::min(a.precision(), b.precision());
      return PadicValue::approx(p, a.valuation() + b.valuation(), a.unit() * b.unit(), n);
    }
    case ArithOp::div: {
      if (b.is_exact_zero()) throw std::domain_error("division by zero");
      if (a.is_exact_zero()) return PadicValue::zero(p);
      int n = std::min(a.precision(), b.precision());
      BigInt m = prime_power(p, static_cast<std::uint64_t>(n));
      BigInt inv;
      mpz_invert(inv.get_mpz_t(), b.unit().get_mpz_t(), m.get_mpz_t());
      return PadicValue::approx(p, a.valuation() - b.valuation(), a.unit() * inv, n);
    }
  }
  throw std::logic_error("unknown p-adic operation");
}

std::string ValuationBound::to_string() const {
  if (infinite) return "inf";
  return exact ? std::to_string(value) : ">=" + std::to_string(value);
}

ValuationBound diff_valuation(const PadicValue& a, const PadicValue& b) {
  require_same_prime(a, b);
  if (a.is_exact_zero() && b.is_exact_zero()) return {0, true, true};
  try {
    PadicValue d = a - b;
    return {d.valuation(), true, false};
  } catch (const PrecisionExhausted& e) {
    return {e.known_to(), false, false};
  }
}

bool agrees(const PadicValue& a, const PadicValue& b) {
  ValuationBound d = diff_valuation(a, b);
  return d.infinite || !d.exact;
}

}  // namespace invbinom
