#pragma once

// Prime-range scans for the good-prime condition (no 1 <= n <= p-2 with
// p^2 | f(n)) and the Wieferich condition, with resumable checkpoints.
//
// Checkpoint files are append-only text. Every committed sub-range is one
// header line `kind lo hi exception_count` followed by that many rows, `p n nu`
// for good-prime scans (nu written ">=k" when censored) and `p` for Wieferich
// scans. A file belongs to one depth; resuming with another depth is refused.
// A torn trailing block is discarded when a scan resumes.

#include <cstdint>
#include <optional>
#include <string>

#include "invbinom/report.hpp"

namespace invbinom {

inline constexpr std::uint64_t kDefaultGoodScanCeiling = 1'000'000;
inline constexpr std::uint64_t kDefaultWieferichCeiling = 100'000'000;

struct ScanOptions {
  int depth = 3;
  /// Re-check every n of every p <= 200 against exact rationals.
  bool oracle_check = true;
  /// 0 means std::thread::hardware_concurrency().
  unsigned threads = 0;
  std::optional<std::string> checkpoint_path;
  /// hi must not exceed this; 0 picks the default for the scan kind.
  std::uint64_t ceiling = 0;
  /// Print committed sub-ranges to stderr.
  bool progress = false;
};

class CheckpointMismatch : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Every odd prime p in [lo, hi) and every 1 <= n <= p-2 with nu_p(f(n)) >= 2.
/// nu is exact up to `depth`; beyond it the row is censored at depth + 1.
/// Throws CapExceeded when hi is above the ceiling and EngineDisagreement when
/// the oracle check fails.
ScanReport scan_good_primes(std::uint64_t lo, std::uint64_t hi, const ScanOptions& opt = {});

/// Every prime p in [lo, hi) with 2^{p-1} == 1 mod p^2.
ScanReport scan_wieferich(std::uint64_t lo, std::uint64_t hi, const ScanOptions& opt = {});

/// The fast-path classification for a single prime: every n in [1, p-2] with
/// nu_p(f(n)) >= 2, nu measured up to depth.
std::vector<ScanException> good_prime_exceptions(Prime p, int depth);

}  // namespace invbinom
