#pragma once

// Behaviour of f along the partial sums x_n = sum_{i<=n} eps_i p^i of a
// p-adic integer, and witnesses that f is discontinuous at a natural number.

#include <cstdint>
#include <optional>

#include "invbinom/fsum.hpp"
#include "invbinom/padic_integer.hpp"
#include "invbinom/report.hpp"

namespace invbinom {

/// Rows for every n <= depth at which x_n changes (n = 0 always), with
/// nu_p(f(x_n)), nu_p(f(x_next) - f(x_n)) and f(x_n) mod p. When a theorem
/// about the spec applies, rows carry the expected value and a status, and
/// the report carries the expected verdict. Stops early, with `truncated`
/// set, once x_n is beyond the modular cap.
///
/// Verdicts are evidence over the window only:
///   - the sequence is eventually constant (x natural, window past its last
///     digit): cauchy;
///   - some tail difference valuation is finite and <= 0: divergence;
///   - tail difference valuations positive and strictly increasing: cauchy;
///   - otherwise inconclusive.
/// The tail is the last max(3, half) differences, or the range a theorem's
/// hypothesis covers.
DefinabilityReport analyze_definability(const PadicIntegerSpec& spec, std::uint64_t depth,
                                        const EngineCaps& caps = {});

/// m with nu_p(m - n) = eps_exp and nu_p(f(m) - f(n)) < 0.
struct DiscontinuityWitness {
  Prime p = 2;
  std::uint64_t n = 0;
  int eps_exp = 0;
  std::uint64_t k = 0;  // m = p^L - (k + 1)
  int L = 0;
  std::uint64_t m = 0;
  std::int64_t nu_metric = 0;            // nu_p(m - n): d_p(m, n) = p^-nu_metric
  std::int64_t nu_image = 0;             // nu_p(f(m) - f(n)), certified
  std::int64_t predicted_nu_f_m = 0;     // nu_p(f(m)) from the p^L - k - 1 formula
  bool exact_checked = false;            // both valuations recomputed from exact rationals
};

/// Builds m = p^L - (k+1) with k + 1 == -n - p^e mod p^{e+1} and the least L
/// making nu_p(f(m)) < min(0, nu_p(f(n))). `L` overrides the choice and must
/// satisfy the same conditions. Values m <= exact_limit are re-checked with
/// exact rationals. Throws CapExceeded (limit = the least infeasible L) when m
/// is beyond the modular cap, and std::domain_error for p in LW.
DiscontinuityWitness find_discontinuity_witness(std::uint64_t n, int eps_exp, Prime p = 2,
                                                std::optional<int> L = std::nullopt, const EngineCaps& caps = {},
                                                std::uint64_t exact_limit = std::uint64_t{1} << 17);

}  // namespace invbinom
