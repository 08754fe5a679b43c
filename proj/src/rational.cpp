#include "invbinom/rational.hpp"

#include <ostream>

namespace invbinom {

Rational::Rational(const BigInt& num, const BigInt& den) {
  if (den == 0) throw std::domain_error("zero denominator");
  q_ = mpq_class(num, den);
  q_.canonicalize();
}

Rational Rational::from_raw(mpq_class q) {
  Rational r;
  r.q_ = std::move(q);
  r.q_.canonicalize();
  return r;
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw std::domain_error("division by zero");
  q_ /= o.q_;
  return *this;
}

Rational Rational::parse(const std::string& text) {
  auto slash = text.find('/');
  try {
    if (slash == std::string::npos) return Rational(BigInt(text, 10));
    return Rational(BigInt(text.substr(0, slash), 10), BigInt(text.substr(slash + 1), 10));
  } catch (const std::invalid_argument&) {
    throw std::invalid_argument("malformed rational: " + text);
  }
}

std::ostream& operator<<(std::ostream& os, const Rational& q) { return os << q.to_string(); }

std::int64_t strip_prime(BigInt& n, Prime p) {
  if (n == 0) throw std::domain_error("valuation undefined for exact zero");
  BigInt pp(static_cast<unsigned long>(p));
  std::int64_t v = 0;
  if (p == 2) {
    v = static_cast<std::int64_t>(mpz_scan1(n.get_mpz_t(), 0));
    mpz_tdiv_q_2exp(n.get_mpz_t(), n.get_mpz_t(), static_cast<mp_bitcnt_t>(v));
    return v;
  }
  v = static_cast<std::int64_t>(mpz_remove(n.get_mpz_t(), n.get_mpz_t(), pp.get_mpz_t()));
  return v;
}

std::int64_t valuation(const BigInt& n, Prime p) {
  BigInt t = n;
  return strip_prime(t, p);
}

std::int64_t valuation_rational(const Rational& q, Prime p) {
  if (q.is_zero()) throw std::domain_error("valuation undefined for exact zero");
  return valuation(q.numerator(), p) - valuation(q.denominator(), p);
}

BigInt prime_power(Prime p, std::uint64_t e) {
  BigInt r;
  mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(p), static_cast<unsigned long>(e));
  return r;
}

}  // namespace invbinom
