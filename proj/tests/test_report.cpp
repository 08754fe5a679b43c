#include <doctest.h>

#include "gen.hpp"
#include "invbinom/report.hpp"

using namespace invbinom;

namespace {

std::string word(testgen::Gen& g) {
  static const char* pool[] = {"", "a", "nu>=3", "x,y", "quote\"d", "tab\tline\nbreak", "-1/3", "\xce\xbd"};
  return pool[g.below(8)];
}

// A document carries one payload: check rows, a scan or a definability report.
Document random_document(testgen::Gen& g) {
  Document d;
  d.command = word(g);
  // params are a keyed mapping, so keys are distinct
  for (auto i = g.below(3); i > 0; --i) d.config.emplace_back("key" + std::to_string(i), word(g));
  const auto payload = g.below(3);
  for (auto i = payload == 0 ? g.below(5) : 0; i > 0; --i) {
    VerificationReport r;
    r.check_id = word(g);
    r.params = {{"p", std::to_string(g.below(100))}};
    r.relation = static_cast<Relation>(g.below(3));
    r.expected = word(g);
    r.measured = word(g);
    r.status = static_cast<Status>(g.below(4));
    r.notes = word(g);
    d.checks.push_back(r);
  }
  if (payload == 1) {
    ScanReport s;
    s.kind = static_cast<ScanKind>(g.below(2));
    s.lo = g.below(1000);
    s.hi = s.lo + g.below(1000);
    s.depth = static_cast<int>(g.below(6));
    for (auto i = g.below(4); i > 0; --i) {
      if (s.kind == ScanKind::good_prime)
        s.exceptions.push_back({g.below(10000), g.below(100), g.signed_between(0, 9), g.below(2) == 1});
      else
        s.exceptions.push_back({g.below(10000), 0, 0, false});
    }
    s.checked_count = g.below(100000);
    s.checkpoint = g.below(100000);
    d.scan = s;
  }
  if (payload == 2) {
    DefinabilityReport r;
    r.spec = word(g);
    r.p = 2 + g.below(30);
    r.depth = g.below(40);
    for (auto i = g.below(4); i > 0; --i)
      r.rows.push_back({g.below(40), std::to_string(g.below(1u << 30)), g.signed_between(-40, 40), word(g), word(g),
                        word(g), static_cast<Status>(g.below(4))});
    r.verdict = static_cast<Verdict>(g.below(3));
    r.theorem_tag = word(g);
    if (g.below(2)) r.expected_verdict = static_cast<Verdict>(g.below(3));
    r.truncated = g.below(2);
    r.notes = word(g);
    d.definability = r;
  }
  return d;
}

}  // namespace

TEST_CASE("row constructors") {
  auto r = check_equal("id", {{"p", "3"}}, 2, 2);
  CHECK(r.status == Status::pass);
  CHECK(check_equal("id", {}, "1", "2").status == Status::fail);
  CHECK(check_at_least("id", {}, 3, {3, true, false}).status == Status::pass);
  CHECK(check_at_least("id", {}, 3, {4, false, false}).status == Status::pass);
  CHECK(check_at_least("id", {}, 5, {4, false, false}).status == Status::fail);
  CHECK(check_at_least("id", {}, 5, {0, true, true}).status == Status::pass);
  CHECK(check_true("id", {}, false).status == Status::fail);
  CHECK(skipped("id", {}, "why").status == Status::skip);
  CHECK(informational("id", {}, "a", "b").status == Status::info);
}

TEST_CASE("enum names round trip") {
  for (int i = 0; i < 3; ++i) CHECK(relation_from_string(to_string(static_cast<Relation>(i))) == static_cast<Relation>(i));
  for (int i = 0; i < 4; ++i) CHECK(status_from_string(to_string(static_cast<Status>(i))) == static_cast<Status>(i));
  for (int i = 0; i < 3; ++i) CHECK(verdict_from_string(to_string(static_cast<Verdict>(i))) == static_cast<Verdict>(i));
  CHECK_THROWS(status_from_string("maybe"));
}

TEST_CASE("property: JSON round trip") {
  testgen::Gen g(71);
  for (int it = 0; it < 300; ++it) {
    Document d = random_document(g);
    auto j = to_json(d);
    CHECK(document_from_json(j) == d);
    CHECK(document_from_json(nlohmann::ordered_json::parse(j.dump())) == d);
  }
}

TEST_CASE("counts and text forms") {
  Document d;
  d.checks = {check_equal("a", {}, 1, 1), check_equal("b", {}, 1, 2), skipped("c", {}, "cap exceeded")};
  CHECK(d.pass_count() == 1);
  CHECK(d.fail_count() == 1);
  CHECK(d.skip_count() == 1);
  std::string csv = to_csv(d);
  CHECK(csv.find("check_id") != std::string::npos);
  CHECK(to_text(d).find("cap exceeded") != std::string::npos);
}
