#include <doctest.h>

#include <algorithm>

#include "invbinom/verifiers.hpp"

using namespace invbinom;

namespace {

std::size_t count(const std::vector<VerificationReport>& rows, Status s) {
  return static_cast<std::size_t>(
      std::count_if(rows.begin(), rows.end(), [&](const VerificationReport& r) { return r.status == s; }));
}

std::string param(const VerificationReport& r, const std::string& key) {
  for (const auto& [k, v] : r.params)
    if (k == key) return v;
  return "";
}

}  // namespace

TEST_CASE("Wieferich constants and offsets") {
  CHECK(wieferich_constant(1093) == 532291);
  CHECK(wieferich_constant(3511) == 179061);
  CHECK(wieferich_offset(3) == 1);
  CHECK(wieferich_offset(23) == 1);
  CHECK(wieferich_offset(1093) == 2);
  CHECK(wieferich_offset(3511) == 2);
}

TEST_CASE("2-adic difference formula on a small grid") {
  auto rows = verify_prop_1_1(400);
  CHECK(count(rows, Status::pass) > 0);
  CHECK(count(rows, Status::fail) == 0);
}

TEST_CASE("p^e - k - 1 formula on small grids") {
  auto r2 = verify_thm_1_2(2, 4, {3, 4, 5, 6, 7, 8});
  CHECK(count(r2, Status::pass) > 0);
  CHECK(count(r2, Status::fail) == 0);
  for (Prime p : {3u, 5u, 7u}) {
    auto rp = verify_thm_1_2(p, 5, {1, 2, 3, 4});
    CHECK(count(rp, Status::pass) > 0);
    CHECK(count(rp, Status::fail) == 0);
  }
}

TEST_CASE("hypotheses outside the formula become skip rows") {
  EngineCaps caps;
  caps.modular_p2_cap = 1000;
  auto rows = verify_thm_1_2(2, 3, {12}, {caps, 0});
  CHECK(count(rows, Status::skip) == rows.size());
  for (const auto& r : rows) CHECK(r.notes.find("cap exceeded") != std::string::npos);
}

TEST_CASE("lemma and congruence sweeps on small grids") {
  CHECK(count(verify_section2({2, 3, 5, 7}, 3), Status::fail) == 0);
  CHECK(count(verify_section3({3, 5, 7}, {}, 2, 12), Status::fail) == 0);
  CHECK(count(verify_section4(8, 6), Status::fail) == 0);
  CHECK(count(verify_section5(23, 13, {1, 2, 3}, 50), Status::fail) == 0);
}

TEST_CASE("the shifted-difference claim fails at p = 23, c = 13, e = 3") {
  auto rows = verify_section3({23}, {13}, 3, 4);
  std::size_t failing = 0;
  for (const auto& r : rows) {
    if (r.status != Status::fail) continue;
    ++failing;
    CHECK(r.check_id == "shifted-difference-nonpositive");
  }
  CHECK(failing > 0);
}
