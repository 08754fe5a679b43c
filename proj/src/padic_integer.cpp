#include "invbinom/padic_integer.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace invbinom {

namespace {

std::string join(const std::vector<std::uint64_t>& v) {
  std::ostringstream os;
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
  return os.str();
}

}  // namespace

PadicIntegerSpec PadicIntegerSpec::from_rational(const Rational& q, Prime p) {
  if (mpz_divisible_ui_p(q.denominator().get_mpz_t(), static_cast<unsigned long>(p)))
    throw std::domain_error("not a p-adic integer");
  PadicIntegerSpec s;
  s.p_ = p;
  s.form_ = Form::rational;
  s.value_ = q;
  return s;
}

PadicIntegerSpec PadicIntegerSpec::from_digits(Prime p, std::vector<std::uint64_t> prefix,
                                               std::vector<std::uint64_t> period) {
  auto bad = [p](std::uint64_t d) { return d >= p; };
  if (std::any_of(prefix.begin(), prefix.end(), bad) || std::any_of(period.begin(), period.end(), bad))
    throw std::invalid_argument("digit out of range for prime");
  PadicIntegerSpec s;
  s.p_ = p;
  s.form_ = Form::digits;
  s.prefix_ = std::move(prefix);
  s.period_ = std::move(period);
  return s;
}

PadicIntegerSpec PadicIntegerSpec::from_sparse2(std::vector<std::uint64_t> exponents, Prime p) {
  for (std::size_t i = 1; i < exponents.size(); ++i)
    if (exponents[i] <= exponents[i - 1]) throw std::invalid_argument("sparse exponents must be strictly increasing");
  PadicIntegerSpec s;
  s.p_ = p;
  s.form_ = Form::sparse2;
  s.exponents_ = std::move(exponents);
  return s;
}

std::vector<std::uint64_t> PadicIntegerSpec::digits(std::uint64_t count) const {
  switch (form_) {
    case Form::rational:
      return digits_of_rational(value_, p_, count);
    case Form::digits: {
      std::vector<std::uint64_t> out;
      out.reserve(count);
      for (std::uint64_t i = 0; i < count; ++i) {
        if (i < prefix_.size()) out.push_back(prefix_[i]);
        else if (period_.empty()) out.push_back(0);
        else out.push_back(period_[(i - prefix_.size()) % period_.size()]);
      }
      return out;
    }
    case Form::sparse2: {
      if (p_ != 2) throw std::invalid_argument("sparse form requires p=2");
      std::vector<std::uint64_t> out(count, 0);
      for (auto e : exponents_)
        if (e < count) out[e] = 1;
      return out;
    }
  }
  return {};
}

std::optional<Rational> PadicIntegerSpec::as_rational() const {
  if (form_ == Form::rational) return value_;
  if (form_ == Form::sparse2) return std::nullopt;
  // x = A + p^m * B / (1 - p^L) with A the prefix value and B the period value.
  BigInt a = 0, b = 0;
  for (std::size_t i = prefix_.size(); i-- > 0;) a = a * static_cast<unsigned long>(p_) + static_cast<unsigned long>(prefix_[i]);
  if (period_.empty()) return Rational(a);
  for (std::size_t i = period_.size(); i-- > 0;) b = b * static_cast<unsigned long>(p_) + static_cast<unsigned long>(period_[i]);
  BigInt pm = prime_power(p_, prefix_.size());
  BigInt pl = prime_power(p_, period_.size());
  return Rational(a) + Rational(pm * b, BigInt(1 - pl));
}

bool PadicIntegerSpec::is_natural() const {
  auto q = as_rational();
  return q && q->denominator() == 1 && q->sign() >= 0;
}

std::string PadicIntegerSpec::describe() const {
  std::ostringstream os;
  switch (form_) {
    case Form::rational: os << "rational:" << value_.to_string(); break;
    case Form::digits: os << "digits:" << join(prefix_) << "|" << join(period_); break;
    case Form::sparse2: os << "sparse2:" << join(exponents_); break;
  }
  return os.str();
}

std::vector<std::uint64_t> digits_of_rational(const Rational& q, Prime p, std::uint64_t count) {
  BigInt num = q.numerator();
  BigInt den = q.denominator();
  BigInt pp(static_cast<unsigned long>(p));
  if (mpz_divisible_p(den.get_mpz_t(), pp.get_mpz_t())) throw std::domain_error("not a p-adic integer");
  BigInt den_inv;
  mpz_invert(den_inv.get_mpz_t(), den.get_mpz_t(), pp.get_mpz_t());
  std::vector<std::uint64_t> out;
  out.reserve(count);
  for (std::uint64_t i = 0; i < count; ++i) {
    BigInt e = num * den_inv;
    mpz_mod(e.get_mpz_t(), e.get_mpz_t(), pp.get_mpz_t());
    out.push_back(e.get_ui());
    // (num/den - e) / p stays in lowest terms over the same denominator.
    num -= e * den;
    mpz_divexact(num.get_mpz_t(), num.get_mpz_t(), pp.get_mpz_t());
  }
  return out;
}

BigInt partial_sum(const PadicIntegerSpec& spec, std::uint64_t n) {
  const Prime p = spec.prime();
  if (spec.form() == PadicIntegerSpec::Form::sparse2) {
    if (p != 2) throw std::invalid_argument("sparse form requires p=2");
    BigInt x = 0;
    for (auto e : spec.exponents())
      if (e <= n) mpz_setbit(x.get_mpz_t(), static_cast<mp_bitcnt_t>(e));
    return x;
  }
  auto d = spec.digits(n + 1);
  BigInt x = 0;
  for (std::size_t i = d.size(); i-- > 0;) x = x * static_cast<unsigned long>(p) + static_cast<unsigned long>(d[i]);
  return x;
}

}  // namespace invbinom
