#pragma once

// Parameter sweeps over the valuation formulas and congruences for f. Each
// sweep recomputes both sides of a claim and returns one row per instance.
//
// Conventions shared by every sweep:
//   - a congruence a == b mod p^m between p-integral rationals is checked as
//     nu_p(a - b) >= m, exactly (exact rationals) or certified (p-adic);
//   - hypotheses are computed, never assumed; an instance outside them is a
//     `skip` row;
//   - where both the exact and a modular engine can evaluate f, both run and
//     a disagreement throws EngineDisagreement instead of producing a row.

#include <cstdint>
#include <optional>
#include <vector>

#include "invbinom/fsum.hpp"
#include "invbinom/report.hpp"

namespace invbinom {

struct VerifyOptions {
  EngineCaps caps;
  std::uint64_t seed = 0;
};

/// 2-adic difference formula for pairs m, n < bound with
/// nu_2(m+2) = nu_2(n+2) >= 4, and nu_2(f(n)) = 1 - nu_2(n+2) for
/// n == 14 mod 16, n < bound.
std::vector<VerificationReport> verify_prop_1_1(std::uint64_t bound = 2000, const VerifyOptions& opt = {});

/// Offset added to nu_p(k) - e in nu_p(f(p^e - k - 1)): k + ... for p = 2 is
/// handled by the caller; 1 for odd non-Wieferich p, 2 for 1093 and 3511.
/// Throws std::domain_error for a Wieferich prime above 3511.
std::int64_t wieferich_offset(Prime p);

/// The smallest e the valuation formula for p^e - k - 1 is claimed for.
std::uint64_t offset_formula_min_e(Prime p, std::uint64_t k);

/// nu_p(f(p^e - k - 1)) against its closed form for 1 <= k <= k_max and every e
/// in `e_list`.
std::vector<VerificationReport> verify_thm_1_2(Prime p, std::uint64_t k_max, const std::vector<std::uint64_t>& e_list,
                                               const VerifyOptions& opt = {});

/// sum_{i=1}^{(p^2-1)/2} (-1)^{i - [i/p] + 1} p / (i C(p-1, [i/p])) mod p^2.
std::uint64_t wieferich_constant(Prime p);

/// Valuation of f(p^e - 2), the binomial congruence behind it, the Eisenstein
/// congruence, the Wieferich constants, the recurrence in both directions,
/// the p^{e+2} lemma on p-divisible lower indices, the c p^e - 1 congruence,
/// the mod p^{e+1} partial-row congruence and the Wolstenholme facts.
std::vector<VerificationReport> verify_section2(const std::vector<Prime>& p_list = {2, 3, 5, 7, 11, 13}, int e_max = 4,
                                                const VerifyOptions& opt = {});

/// Congruences and valuations around f(c p^e + i) - f(i). An empty c_list
/// means every 1 <= c <= p-1.
std::vector<VerificationReport> verify_section3(const std::vector<Prime>& p_list = {3, 5, 7, 11, 13, 23},
                                                const std::vector<std::uint64_t>& c_list = {}, int e_max = 3,
                                                std::uint64_t i_budget = 40, const VerifyOptions& opt = {});

/// The 2-adic results: odd reciprocal sums, symmetric polynomials of odd
/// numbers, nu_2(f(2^e - 1)), the 2^e + i inequality and its closed form.
std::vector<VerificationReport> verify_section4(int e_max = 14, std::uint64_t i_max = 12, bool conjecture_mode = true,
                                                const VerifyOptions& opt = {});

/// Congruences used when nu_p(f(c-1)) = 2. Empty j_range means every
/// 1 <= j <= (p-1)/2.
std::vector<VerificationReport> verify_section5(Prime p = 23, std::uint64_t c = 13,
                                                const std::vector<std::uint64_t>& j_range = {},
                                                std::size_t sample_budget = 500, const VerifyOptions& opt = {});

}  // namespace invbinom
