#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "invbinom/fsum.hpp"
#include "invbinom/scanners.hpp"

using namespace invbinom;

namespace {

std::string temp_path(const std::string& name) {
  auto p = std::filesystem::temp_directory_path() / ("invbinom_test_" + name);
  std::filesystem::remove(p);
  return p.string();
}

}  // namespace

TEST_CASE("23 is the only exception below 10^4") {
  ScanOptions opt;
  opt.threads = 1;
  ScanReport r = scan_good_primes(3, 10'000, opt);
  REQUIRE(r.exceptions.size() == 1);
  CHECK(r.exceptions[0] == ScanException{23, 12, 2, false});
  CHECK(r.checked_count == 1228);
  CHECK(r.checkpoint == 9973);
}

TEST_CASE("fast path agrees with exact values for every p <= 200") {
  for (Prime p = 3; p <= 200; p += 2) {
    bool prime = true;
    for (Prime d = 3; d * d <= p; d += 2) prime = prime && p % d != 0;
    if (!prime) continue;
    auto got = good_prime_exceptions(p, 4);
    auto f = f_recursive_table(p - 2);
    std::vector<ScanException> want;
    for (std::uint64_t n = 1; n + 2 <= p; ++n) {
      auto nu = valuation_rational(f[n], p);
      if (nu >= 2) want.push_back({p, n, std::min<std::int64_t>(nu, 5), nu > 4});
    }
    CHECK(got == want);
  }
}

TEST_CASE("Wieferich scan") {
  ScanOptions opt;
  opt.threads = 1;
  ScanReport r = scan_wieferich(2, 4'000'000, opt);
  REQUIRE(r.exceptions.size() == 2);
  CHECK(r.exceptions[0].p == 1093);
  CHECK(r.exceptions[1].p == 3511);
}

TEST_CASE("results do not depend on the thread count") {
  ScanOptions one, four;
  one.threads = 1;
  four.threads = 4;
  CHECK(scan_good_primes(3, 40'000, one) == scan_good_primes(3, 40'000, four));
  CHECK(scan_wieferich(2, 3'000'000, one) == scan_wieferich(2, 3'000'000, four));
}

TEST_CASE("checkpoints resume and reproduce the full scan") {
  std::string path = temp_path("resume.ckpt");
  ScanOptions opt;
  opt.threads = 2;
  opt.checkpoint_path = path;
  ScanReport first = scan_good_primes(3, 20'000, opt);
  ScanReport resumed = scan_good_primes(3, 40'000, opt);
  ScanOptions plain;
  plain.threads = 1;
  CHECK(resumed == scan_good_primes(3, 40'000, plain));
  CHECK(first == scan_good_primes(3, 20'000, plain));
  // a finished file answers without rescanning
  CHECK(scan_good_primes(3, 40'000, opt) == resumed);
  std::filesystem::remove(path);
}

TEST_CASE("a torn trailing block is ignored") {
  std::string path = temp_path("torn.ckpt");
  ScanOptions opt;
  opt.threads = 1;
  opt.checkpoint_path = path;
  scan_good_primes(3, 10'000, opt);
  {
    std::ofstream out(path, std::ios::app);
    out << "good_prime 10000 26384 3\n23 12 2\n";  // header promises three rows, one written
  }
  ScanOptions plain;
  plain.threads = 1;
  ScanReport full = scan_good_primes(3, 30'000, plain);
  CHECK(scan_good_primes(3, 30'000, opt) == full);
  // the torn tail was dropped, so the blocks written after it are read back
  std::ifstream in(path);
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  CHECK(text.find("good_prime 10000 26384 3") == std::string::npos);
  CHECK(text.find("good_prime 10000 26384 0") != std::string::npos);
  CHECK(text.find("good_prime 26384 30000 0") != std::string::npos);
  CHECK(scan_good_primes(3, 30'000, opt) == full);
  std::filesystem::remove(path);
}

TEST_CASE("a checkpoint written at another depth is refused") {
  std::string path = temp_path("depth.ckpt");
  ScanOptions opt;
  opt.threads = 1;
  opt.checkpoint_path = path;
  scan_good_primes(3, 5'000, opt);
  opt.depth = 5;
  CHECK_THROWS_AS(scan_good_primes(3, 5'000, opt), CheckpointMismatch);
  std::filesystem::remove(path);
}

TEST_CASE("a file that is not a checkpoint is left alone") {
  std::string path = temp_path("foreign.txt");
  { std::ofstream(path) << "notes\n"; }
  ScanOptions opt;
  opt.checkpoint_path = path;
  CHECK_THROWS_AS(scan_good_primes(3, 100, opt), CheckpointMismatch);
  CHECK(std::filesystem::file_size(path) == 6);
  std::filesystem::remove(path);
}

TEST_CASE("the ceiling is enforced") {
  ScanOptions opt;
  CHECK_THROWS_AS(scan_good_primes(3, kDefaultGoodScanCeiling + 1, opt), CapExceeded);
  CHECK_THROWS_AS(scan_wieferich(2, kDefaultWieferichCeiling + 1, opt), CapExceeded);
  opt.ceiling = 100;
  CHECK_THROWS_AS(scan_good_primes(3, 101, opt), CapExceeded);
  CHECK_NOTHROW(scan_good_primes(3, 100, opt));
  opt.depth = 1;
  CHECK_THROWS_AS(scan_good_primes(3, 100, opt), std::invalid_argument);
}

TEST_CASE("censored rows beyond the depth") {
  // nu_23(f(12)) is exactly 2, so depth 2 leaves it uncensored
  auto rows = good_prime_exceptions(23, 2);
  REQUIRE(rows.size() == 1);
  CHECK(rows[0] == ScanException{23, 12, 2, false});
}
