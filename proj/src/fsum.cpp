#include "invbinom/fsum.hpp"

#include <algorithm>
#include <string>

#include "invbinom/binomial.hpp"
#include "invbinom/residue.hpp"

namespace invbinom {

namespace {

int floor_log(std::uint64_t x, Prime p) {
  int m = 0;
  while (x >= p) {
    x /= p;
    ++m;
  }
  return m;
}

std::uint64_t strip_u64(std::uint64_t x, Prime p, int& v) {
  v = 0;
  while (x % p == 0) {
    x /= p;
    ++v;
  }
  return x;
}

// Outcome of one fixed-precision evaluation.
struct Attempt {
  std::optional<PadicValue> value;
  int deficit = 0;  // digits missing; meaningful when !value
};

// Turns T = p^m * g (T known mod p^W) into g * scale where scale is the unit
// `scale_unit` times p^scale_val.
Attempt finish(const BigInt& t_residue, Prime p, int m, int working, int precision, const BigInt& scale_unit,
               std::int64_t scale_val) {
  if (t_residue == 0) return {std::nullopt, working};
  BigInt t = t_residue;
  std::int64_t vt = strip_prime(t, p);
  std::int64_t rel = working - vt;
  if (rel < precision) return {std::nullopt, static_cast<int>(precision - rel)};
  return {PadicValue::approx(p, vt - m + scale_val, t * scale_unit, precision), 0};
}

// Running value of sum_{k=1}^{K} 2^k p^{m - nu(k)} / k' modulo p^W, kept as
// a fraction A/B of residues so no inversion happens inside the loop.
template <class Ring>
class IdentityAccumulator {
 public:
  using V = typename Ring::value_type;

  IdentityAccumulator(Ring ring, Prime p, int m, int working)
      : ring_(std::move(ring)), p_(p), m_(m), working_(working) {
    p_pow_.push_back(ring_.one());
    for (int i = 1; i <= m; ++i) p_pow_.push_back(ring_.mul(p_pow_.back(), ring_.from(p)));
    a_ = ring_.zero();
    b_ = ring_.one();
    pow2_ = ring_.one();
  }

  void advance_to(std::uint64_t target) {
    while (k_ < target) {
      ++k_;
      pow2_ = ring_.add(pow2_, pow2_);
      int v = 0;
      std::uint64_t kk = strip_u64(k_, p_, v);
      V kp = ring_.from(kk);
      V term = ring_.mul(pow2_, p_pow_[static_cast<std::size_t>(m_ - v)]);
      a_ = ring_.add(ring_.mul(a_, kp), ring_.mul(term, b_));
      b_ = ring_.mul(b_, kp);
    }
  }

  // f(n) from the state at K = n + 1.
  Attempt value(std::uint64_t n, int precision) {
    advance_to(n + 1);
    V t = ring_.mul(a_, ring_.inv(b_));
    int vn = 0;
    std::uint64_t n1 = strip_u64(n + 1, p_, vn);
    V scale = ring_.mul(ring_.from(n1), ring_.inv(pow2_));
    return finish(ring_.to_big(t), p_, m_, working_, precision, ring_.to_big(scale), vn);
  }

 private:
  Ring ring_;
  Prime p_;
  int m_;
  int working_;
  std::vector<V> p_pow_;
  V a_, b_, pow2_;
  std::uint64_t k_ = 0;
};

Attempt identity_attempt(std::uint64_t n, Prime p, int precision, int guard) {
  int m = floor_log(n + 1, p);
  int working = precision + m + guard;
  BigInt mod = prime_power(p, static_cast<std::uint64_t>(working));
  return with_ring(mod, [&](auto ring) {
    IdentityAccumulator<decltype(ring)> acc(ring, p, m, working);
    return acc.value(n, precision);
  });
}

// Defining sum modulo p^W: sum_k p^{m - nu(C(n,k))} * unit(C(n,k))^{-1}, with
// m = floor(log_p n) bounding every nu(C(n,k)).
Attempt direct_attempt(std::uint64_t n, Prime p, int precision, int guard) {
  int m = n == 0 ? 0 : floor_log(n, p);
  int working = precision + m + guard;
  BigInt mod = prime_power(p, static_cast<std::uint64_t>(working));
  return with_ring(mod, [&](auto ring) {
    using V = typename decltype(ring)::value_type;
    std::vector<V> p_pow{ring.one()};
    for (int i = 1; i <= m; ++i) p_pow.push_back(ring.mul(p_pow.back(), ring.from(p)));
    // C(n,k) = p^v * num/den; its inverse is p^{-v} * den/num.
    V num = ring.one(), den = ring.one();
    int v = 0;
    V half_a = ring.zero(), half_b = ring.one();
    V mid_a = ring.zero(), mid_b = ring.one();
    for (std::uint64_t k = 0; 2 * k <= n; ++k) {
      if (k > 0) {
        int vt = 0, vb = 0;
        std::uint64_t top = strip_u64(n - k + 1, p, vt);
        std::uint64_t bot = strip_u64(k, p, vb);
        v += vt - vb;
        num = ring.mul(num, ring.from(top));
        den = ring.mul(den, ring.from(bot));
      }
      V term_num = ring.mul(p_pow[static_cast<std::size_t>(m - v)], den);
      if (2 * k == n) {
        mid_a = term_num;
        mid_b = num;
      } else {
        half_a = ring.add(ring.mul(half_a, num), ring.mul(term_num, half_b));
        half_b = ring.mul(half_b, num);
      }
    }
    // total = 2 * half + mid
    V half = ring.mul(half_a, ring.inv(half_b));
    V mid = ring.mul(mid_a, ring.inv(mid_b));
    V t = ring.add(ring.add(half, half), mid);
    return finish(ring.to_big(t), p, m, working, precision, BigInt(1), 0);
  });
}

template <class AttemptFn>
PadicValue escalate(AttemptFn&& attempt, int precision, const EngineCaps& caps) {
  int guard = caps.initial_guard_digits;
  while (true) {
    Attempt a = attempt(guard);
    if (a.value) return *a.value;
    int next = guard + a.deficit + 2;
    if (next > caps.max_guard_digits)
      throw PrecisionExhausted(0, "precision exhausted: guard digits above ceiling " +
                                      std::to_string(caps.max_guard_digits));
    guard = next;
  }
  (void)precision;
}

PadicValue raw(const Attempt& a, const char* what) {
  if (!a.value) throw PrecisionExhausted(0, std::string("precision exhausted in ") + what);
  return *a.value;
}

void check_modular_cap(std::uint64_t n, Prime p, const EngineCaps& caps) {
  std::uint64_t cap = p == 2 ? caps.modular_p2_cap : caps.modular_odd_cap;
  if (n > cap) throw CapExceeded(cap, "modular engine cap exceeded: n=" + std::to_string(n));
}

}  // namespace

Rational f_exact(std::uint64_t n, const EngineCaps& caps) {
  if (n > caps.exact_n_cap) throw CapExceeded(caps.exact_n_cap, "exact cap exceeded; use modular engine");
  mpq_class half = 0;
  mpq_class mid = 0;
  BigInt c = 1;
  for (std::uint64_t k = 0; 2 * k <= n; ++k) {
    if (k > 0) {
      c *= static_cast<unsigned long>(n - k + 1);
      mpz_divexact_ui(c.get_mpz_t(), c.get_mpz_t(), static_cast<unsigned long>(k));
    }
    mpq_class term(BigInt(1), c);
    if (2 * k == n) mid = term;
    else half += term;
  }
  return Rational::from_raw(2 * half + mid);
}

Rational f_recursive(std::uint64_t n) {
  mpq_class f = 1;
  for (std::uint64_t i = 1; i <= n; ++i) {
    f *= mpq_class(BigInt(static_cast<unsigned long>(i + 1)), BigInt(static_cast<unsigned long>(2 * i)));
    f += 1;
  }
  return Rational::from_raw(f);
}

namespace {

/// sum_{k=a}^{b-1} 2^k / k as num / den, by binary splitting.
void power_reciprocal_split(std::uint64_t a, std::uint64_t b, BigInt& num, BigInt& den) {
  if (b - a == 1) {
    mpz_ui_pow_ui(num.get_mpz_t(), 2, static_cast<unsigned long>(a));
    den = static_cast<unsigned long>(a);
    return;
  }
  std::uint64_t mid = a + (b - a) / 2;
  BigInt n2, d2;
  power_reciprocal_split(a, mid, num, den);
  power_reciprocal_split(mid, b, n2, d2);
  num = num * d2 + n2 * den;
  den *= d2;
}

}  // namespace

Rational f_exact_identity(std::uint64_t n) {
  BigInt num, den;
  power_reciprocal_split(1, n + 2, num, den);
  mpq_class s(num * static_cast<unsigned long>(n + 1), den);
  mpz_mul_2exp(s.get_den_mpz_t(), s.get_den_mpz_t(), static_cast<mp_bitcnt_t>(n + 1));
  s.canonicalize();
  return Rational::from_raw(s);
}

std::vector<Rational> f_recursive_table(std::uint64_t n_max) {
  std::vector<Rational> out;
  out.reserve(n_max + 1);
  mpq_class f = 1;
  out.push_back(Rational(1));
  for (std::uint64_t i = 1; i <= n_max; ++i) {
    f *= mpq_class(BigInt(static_cast<unsigned long>(i + 1)), BigInt(static_cast<unsigned long>(2 * i)));
    f += 1;
    out.push_back(Rational::from_raw(f));
  }
  return out;
}

Rational f_previous(const Rational& f_n, std::uint64_t n) {
  if (n == 0) throw std::domain_error("f_previous needs n >= 1");
  return (f_n - Rational(1)) * Rational(BigInt(static_cast<unsigned long>(2 * n)), BigInt(static_cast<unsigned long>(n + 1)));
}

PadicValue f_padic_identity(std::uint64_t n, Prime p, int precision, int guard_digits) {
  if (p == 2) throw std::invalid_argument("identity engine needs odd p");
  return raw(identity_attempt(n, p, precision, guard_digits), "identity engine");
}

PadicValue f_padic_direct(std::uint64_t n, Prime p, int precision, int guard_digits) {
  return raw(direct_attempt(n, p, precision, guard_digits), "direct engine");
}

PadicValue f_padic(std::uint64_t n, Prime p, int precision, const EngineCaps& caps) {
  check_modular_cap(n, p, caps);
  if (p == 2) return escalate([&](int g) { return direct_attempt(n, p, precision, g); }, precision, caps);
  return escalate([&](int g) { return identity_attempt(n, p, precision, g); }, precision, caps);
}

std::vector<PadicValue> f_padic_many(Prime p, int precision, std::span<const std::uint64_t> ns,
                                     const EngineCaps& caps) {
  std::vector<PadicValue> out;
  out.reserve(ns.size());
  if (ns.empty()) return out;
  if (!std::is_sorted(ns.begin(), ns.end())) throw std::invalid_argument("f_padic_many needs ascending n");
  check_modular_cap(ns.back(), p, caps);
  if (p == 2) {
    for (auto n : ns) out.push_back(f_padic(n, p, precision, caps));
    return out;
  }
  int m = floor_log(ns.back() + 1, p);
  int guard = std::max(caps.initial_guard_digits, 4);
  int working = precision + m + guard;
  BigInt mod = prime_power(p, static_cast<std::uint64_t>(working));
  with_ring(mod, [&](auto ring) {
    IdentityAccumulator<decltype(ring)> acc(ring, p, m, working);
    for (auto n : ns) {
      Attempt a = acc.value(n, precision);
      out.push_back(a.value ? *a.value : f_padic(n, p, precision, caps));
    }
    return 0;
  });
  return out;
}

std::int64_t f_diff_valuation(std::uint64_t m, std::uint64_t n, Prime p, const EngineCaps& caps) {
  if (m == n) throw std::invalid_argument("f_diff_valuation needs m != n");
  for (int precision = 16; precision <= caps.max_diff_precision; precision *= 2) {
    ValuationBound d = diff_valuation(f_padic(m, p, precision, caps), f_padic(n, p, precision, caps));
    if (d.exact) return d.value;
  }
  throw PrecisionExhausted(0, "precision exhausted: difference agrees past the precision ceiling");
}

Rational odd_reciprocal_sum(std::uint64_t n) { return odd_reciprocal_sums(n).back(); }

std::vector<Rational> odd_reciprocal_sums(std::uint64_t n_max) {
  std::vector<Rational> out;
  out.reserve(n_max + 1);
  mpq_class s = 0;
  out.push_back(Rational(0));
  for (std::uint64_t j = 1; j <= n_max; ++j) {
    s += mpq_class(BigInt(1), BigInt(static_cast<unsigned long>(2 * j - 1)));
    out.push_back(Rational::from_raw(s));
  }
  return out;
}

BigInt elementary_symmetric(std::span<const BigInt> args, std::size_t k) {
  if (k > args.size()) throw std::invalid_argument("degree exceeds argument count");
  std::vector<BigInt> e(k + 1, BigInt(0));
  e[0] = 1;
  for (std::size_t i = 0; i < args.size(); ++i) {
    for (std::size_t j = std::min(k, i + 1); j >= 1; --j) e[j] += args[i] * e[j - 1];
  }
  return e[k];
}

BigInt elementary_symmetric(std::span<const std::int64_t> args, std::size_t k) {
  std::vector<BigInt> big;
  big.reserve(args.size());
  for (auto a : args) big.emplace_back(static_cast<long>(a));
  return elementary_symmetric(std::span<const BigInt>(big), k);
}

SignedReciprocalResidues signed_reciprocal_sum(Prime p) {
  if (p < 3 || p % 2 == 0) throw std::invalid_argument("needs an odd prime");
  ModU64 ring(p);
  std::uint64_t s = 0;
  for (std::uint64_t c = 1; c < p; ++c) {
    std::uint64_t t = ring.inv(c);
    s = c % 2 ? ring.add(s, t) : ring.sub(s, t);
  }
  BigInt p2 = BigInt(static_cast<unsigned long>(p)) * static_cast<unsigned long>(p);
  BigInt two_p;
  mpz_powm_ui(two_p.get_mpz_t(), BigInt(2).get_mpz_t(), static_cast<unsigned long>(p), p2.get_mpz_t());
  BigInt q = two_p - 2;
  if (q < 0) q += p2;
  mpz_divexact_ui(q.get_mpz_t(), q.get_mpz_t(), static_cast<unsigned long>(p));
  return {s, BigInt(q % static_cast<unsigned long>(p)).get_ui()};
}

Rational inverse_binomial_sum(std::uint64_t n, std::uint64_t lo, std::uint64_t hi) {
  if (hi > n || lo > hi) throw std::invalid_argument("inverse_binomial_sum range");
  mpq_class s = 0;
  BigInt c = binomial_exact(n, lo);
  for (std::uint64_t k = lo; k <= hi; ++k) {
    if (k > lo) {
      c *= static_cast<unsigned long>(n - k + 1);
      mpz_divexact_ui(c.get_mpz_t(), c.get_mpz_t(), static_cast<unsigned long>(k));
    }
    s += mpq_class(BigInt(1), c);
  }
  return Rational::from_raw(s);
}

Rational harmonic(std::uint64_t m) {
  mpq_class s = 0;
  for (std::uint64_t i = 1; i <= m; ++i) s += mpq_class(BigInt(1), BigInt(static_cast<unsigned long>(i)));
  return Rational::from_raw(s);
}

}  // namespace invbinom
