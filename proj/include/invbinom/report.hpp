#pragma once

// Report rows produced by verifiers, scanners and the definability analyzer,
// plus their JSON / CSV / text serializations.

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "invbinom/padic.hpp"

namespace invbinom {

using Params = std::vector<std::pair<std::string, std::string>>;

enum class Relation { equal, at_least, info };
enum class Status { pass, fail, skip, info };

std::string to_string(Relation r);
std::string to_string(Status s);
Relation relation_from_string(const std::string& s);
Status status_from_string(const std::string& s);

/// One claim instance. For `equal` the row passes iff the two strings match
/// exactly; for `at_least` iff the certified measurement is >= the bound.
struct VerificationReport {
  std::string check_id;
  Params params;
  Relation relation = Relation::equal;
  std::string expected;
  std::string measured;
  Status status = Status::info;
  std::string notes;

  bool operator==(const VerificationReport&) const = default;
};

VerificationReport check_equal(std::string id, Params params, const std::string& expected,
                               const std::string& measured, std::string notes = {});
VerificationReport check_equal(std::string id, Params params, std::int64_t expected, std::int64_t measured,
                               std::string notes = {});
/// Passes iff `measured` is certified to be >= bound (an uncertified ">=k"
/// with k < bound fails).
VerificationReport check_at_least(std::string id, Params params, std::int64_t bound, const ValuationBound& measured,
                                  std::string notes = {});
VerificationReport check_true(std::string id, Params params, bool holds, std::string notes = {});
VerificationReport skipped(std::string id, Params params, std::string notes);
VerificationReport informational(std::string id, Params params, std::string expected, std::string measured,
                                 std::string notes = {});

struct ScanException {
  Prime p = 0;
  std::uint64_t n = 0;  // unused for Wieferich rows
  std::int64_t nu = 0;
  bool censored = false;  // true: nu is only a lower bound

  bool operator==(const ScanException&) const = default;
};

enum class ScanKind { good_prime, wieferich };
std::string to_string(ScanKind k);

struct ScanReport {
  ScanKind kind = ScanKind::good_prime;
  std::uint64_t lo = 0;
  std::uint64_t hi = 0;
  int depth = 0;
  std::vector<ScanException> exceptions;  // sorted by (p, n)
  std::uint64_t checked_count = 0;
  std::uint64_t checkpoint = 0;  // last prime covered

  bool operator==(const ScanReport&) const = default;
};

enum class Verdict { cauchy_evidence, divergence_evidence, inconclusive };
std::string to_string(Verdict v);
Verdict verdict_from_string(const std::string& s);

struct DefinabilityRow {
  std::uint64_t n = 0;
  std::string x_n;
  std::int64_t nu_f = 0;
  std::string nu_diff;  // nu_p(f(x_{n+1}) - f(x_n)): integer, ">=k", "inf" or "" on the last row
  std::string residue;  // f(x_n) mod p when p-integral, else ""
  std::string expected;
  Status status = Status::info;

  bool operator==(const DefinabilityRow&) const = default;
};

struct DefinabilityReport {
  std::string spec;
  Prime p = 2;
  std::uint64_t depth = 0;
  std::vector<DefinabilityRow> rows;
  Verdict verdict = Verdict::inconclusive;
  std::string theorem_tag;  // "" when no theorem's hypothesis matches
  std::optional<Verdict> expected_verdict;
  bool truncated = false;
  std::string notes;

  bool operator==(const DefinabilityReport&) const = default;
};

/// Everything one CLI invocation prints.
struct Document {
  std::string command;
  Params config;
  std::vector<VerificationReport> checks;
  std::optional<ScanReport> scan;
  std::optional<DefinabilityReport> definability;

  std::size_t pass_count() const;
  std::size_t fail_count() const;
  std::size_t skip_count() const;

  bool operator==(const Document&) const = default;
};

nlohmann::ordered_json to_json(const Document& d);
Document document_from_json(const nlohmann::ordered_json& j);
std::string to_csv(const Document& d);
std::string to_text(const Document& d);

}  // namespace invbinom
