#include "invbinom/binomial.hpp"

#include <stdexcept>
#include <utility>

#include "invbinom/residue.hpp"

namespace invbinom {

std::uint64_t alpha_p(std::uint64_t n, Prime p) {
  std::uint64_t s = 0;
  while (n) {
    s += n % p;
    n /= p;
  }
  return s;
}

std::uint64_t nu_factorial(std::uint64_t n, Prime p) { return (n - alpha_p(n, p)) / (p - 1); }

std::uint64_t nu_binomial(std::uint64_t n, std::uint64_t k, Prime p) {
  if (k > n) throw std::domain_error("binomial index k exceeds n");
  return (alpha_p(k, p) + alpha_p(n - k, p) - alpha_p(n, p)) / (p - 1);
}

CarryProfile carry_profile(std::uint64_t n, std::uint64_t k, Prime p) {
  if (k > n) throw std::domain_error("binomial index k exceeds n");
  CarryProfile c{n, k, p, 0};
  std::uint64_t a = k, b = n - k, carry = 0;
  while (a || b || carry) {
    std::uint64_t s = a % p + b % p + carry;
    carry = s >= p ? 1 : 0;
    c.carries += carry;
    a /= p;
    b /= p;
  }
  return c;
}

BigInt binomial_exact(std::uint64_t n, std::uint64_t k) {
  if (k > n) throw std::domain_error("binomial index k exceeds n");
  if (k > n - k) k = n - k;
  BigInt c = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    c *= static_cast<unsigned long>(n - k + i);
    mpz_divexact_ui(c.get_mpz_t(), c.get_mpz_t(), static_cast<unsigned long>(i));
  }
  return c;
}

PadicValue binomial_padic(std::uint64_t n, std::uint64_t k, Prime p, int precision) {
  if (k > n) throw std::domain_error("binomial index k exceeds n");
  if (k > n - k) k = n - k;
  BigInt mod = prime_power(p, static_cast<std::uint64_t>(precision));
  return with_ring(mod, [&](const auto& ring) {
    auto num = ring.one();
    auto den = ring.one();
    std::int64_t v = 0;
    for (std::uint64_t i = 1; i <= k; ++i) {
      std::uint64_t top = n - k + i, bot = i;
      int vt = valuation_u64(top, p), vb = valuation_u64(bot, p);
      for (int j = 0; j < vt; ++j) top /= p;
      for (int j = 0; j < vb; ++j) bot /= p;
      v += vt - vb;
      num = ring.mul(num, ring.from(top));
      den = ring.mul(den, ring.from(bot));
    }
    return PadicValue::approx(p, v, ring.to_big(ring.mul(num, ring.inv(den))), precision);
  });
}

PadicValue BinomialRow::inverse_at(std::uint64_t k) const {
  BigInt mod = prime_power(p, static_cast<std::uint64_t>(precision));
  BigInt inv;
  mpz_invert(inv.get_mpz_t(), unit[k].get_mpz_t(), mod.get_mpz_t());
  return PadicValue::approx(p, -valuation[k], inv, precision);
}

BinomialRow binomial_row(std::uint64_t n, Prime p, int precision, bool inverse) {
  BinomialRow row;
  row.p = p;
  row.precision = precision;
  row.valuation.resize(n + 1);
  row.unit.resize(n + 1);
  BigInt mod = prime_power(p, static_cast<std::uint64_t>(precision));
  with_ring(mod, [&](const auto& ring) {
    using V = typename std::decay_t<decltype(ring)>::value_type;
    // Units are kept as num/den to avoid an inversion per step; dens are
    // inverted in one batch at the end.
    std::vector<V> num(n + 1), den(n + 1);
    num[0] = ring.one();
    den[0] = ring.one();
    row.valuation[0] = 0;
    for (std::uint64_t k = 1; k <= n; ++k) {
      std::uint64_t top = n - k + 1, bot = k;
      int vt = valuation_u64(top, p), vb = valuation_u64(bot, p);
      for (int j = 0; j < vt; ++j) top /= p;
      for (int j = 0; j < vb; ++j) bot /= p;
      row.valuation[k] = row.valuation[k - 1] + (inverse ? vb - vt : vt - vb);
      if (inverse) std::swap(top, bot);
      num[k] = ring.mul(num[k - 1], ring.from(top));
      den[k] = ring.mul(den[k - 1], ring.from(bot));
    }
    // den[k] divides den[k+1] multiplicatively, so 1/den[k] = (1/den[n]) * prod_{i>k} bot_i.
    V inv = ring.inv(den[n]);
    for (std::uint64_t k = n + 1; k-- > 0;) {
      row.unit[k] = ring.to_big(ring.mul(num[k], inv));
      if (k == 0) break;
      std::uint64_t bot = inverse ? n - k + 1 : k;
      while (bot % p == 0) bot /= p;
      inv = ring.mul(inv, ring.from(bot));
    }
    return 0;
  });
  return row;
}

}  // namespace invbinom
