#pragma once

// Engines for f(n) = sum_{k=0}^{n} 1/C(n,k) and the auxiliary sums that the
// verifiers need.
//
// Three routes are provided and checked against each other:
//   direct    - the defining sum, exact rationals (f_exact);
//   recursive - f(n) = (n+1)/(2n) f(n-1) + 1 from f(0) = 1 (f_recursive);
//   modular   - p-adic values with certified valuation (f_padic). For odd p it
//               uses f(n) = (n+1) 2^{-(n+1)} sum_{k=1}^{n+1} 2^k/k, an identity
//               from outside this code base that is only trusted because the
//               tests pin it to f_exact. For p = 2 that identity needs ~n
//               digits of absolute precision, so the defining sum is evaluated
//               modulo 2^W instead (f_padic_direct).

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "invbinom/padic.hpp"
#include "invbinom/rational.hpp"

namespace invbinom {

struct EngineCaps {
  std::uint64_t exact_n_cap = 5000;
  std::uint64_t modular_p2_cap = std::uint64_t{1} << 22;
  std::uint64_t modular_odd_cap = std::uint64_t{1} << 24;
  int initial_guard_digits = 2;
  int max_guard_digits = 512;
  /// Ceiling on relative precision when certifying a difference valuation.
  int max_diff_precision = 1024;
};

class CapExceeded : public std::runtime_error {
 public:
  CapExceeded(std::uint64_t limit, const std::string& what) : std::runtime_error(what), limit_(limit) {}
  std::uint64_t limit() const { return limit_; }

 private:
  std::uint64_t limit_;
};

/// Two engines disagreed; treated as a hard failure, never as a report row.
class EngineDisagreement : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

enum class Engine { direct, recursive, modular };

/// f(n) together with the engine that produced it.
struct FValue {
  std::uint64_t n = 0;
  Engine engine = Engine::direct;
  std::optional<Rational> exact;
  std::optional<PadicValue> padic;
};

Rational f_exact(std::uint64_t n, const EngineCaps& caps = {});
Rational f_recursive(std::uint64_t n);
/// f(n) as an exact rational from (n+1) 2^{-(n+1)} sum_{k=1}^{n+1} 2^k/k,
/// summed by binary splitting. Far faster than the other exact routes for
/// large n; trusted only because the tests pin it to f_exact.
Rational f_exact_identity(std::uint64_t n);
/// f(0..n_max) by the forward recurrence.
std::vector<Rational> f_recursive_table(std::uint64_t n_max);
/// Inverse recurrence: f(n-1) = (f(n) - 1) * 2n / (n+1), n >= 1.
Rational f_previous(const Rational& f_n, std::uint64_t n);

/// f(n) in Q_p with relative precision exactly N and an exact valuation.
/// Escalates guard digits internally; throws PrecisionExhausted past
/// caps.max_guard_digits and CapExceeded past the modular caps.
PadicValue f_padic(std::uint64_t n, Prime p, int precision, const EngineCaps& caps = {});

/// Raw odd-p identity engine at a fixed guard. Throws PrecisionExhausted when
/// cancellation leaves fewer than N digits.
PadicValue f_padic_identity(std::uint64_t n, Prime p, int precision, int guard_digits);

/// Raw defining-sum engine (any p) at a fixed guard.
PadicValue f_padic_direct(std::uint64_t n, Prime p, int precision, int guard_digits);

/// f at every n in `ns` (ascending). For odd p this is a single pass of the
/// identity engine; for p = 2 each value is computed directly.
std::vector<PadicValue> f_padic_many(Prime p, int precision, std::span<const std::uint64_t> ns,
                                     const EngineCaps& caps = {});

/// nu_p(f(m) - f(n)), m != n, certified by escalating precision.
std::int64_t f_diff_valuation(std::uint64_t m, std::uint64_t n, Prime p, const EngineCaps& caps = {});

/// sum_{j=1}^{n} 1/(2j-1).
Rational odd_reciprocal_sum(std::uint64_t n);
/// Prefix sums for n = 0..n_max (index 0 holds 0).
std::vector<Rational> odd_reciprocal_sums(std::uint64_t n_max);

/// k-th elementary symmetric polynomial of `args`; sigma_0 = 1.
BigInt elementary_symmetric(std::span<const BigInt> args, std::size_t k);
BigInt elementary_symmetric(std::span<const std::int64_t> args, std::size_t k);

/// Both sides of the alternating reciprocal-sum congruence mod p:
/// sum_{c=1}^{p-1} (-1)^{c+1}/c and (2^p - 2)/p.
struct SignedReciprocalResidues {
  std::uint64_t alternating_sum = 0;
  std::uint64_t fermat_quotient = 0;
  bool equal() const { return alternating_sum == fermat_quotient; }
};
SignedReciprocalResidues signed_reciprocal_sum(Prime p);

/// sum_{k=lo}^{hi} 1/C(n,k), exact.
Rational inverse_binomial_sum(std::uint64_t n, std::uint64_t lo, std::uint64_t hi);

/// Exact harmonic number H_m = sum_{i=1}^{m} 1/i.
Rational harmonic(std::uint64_t m);

}  // namespace invbinom
