#include "invbinom/report.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace invbinom {

using nlohmann::ordered_json;

namespace {

template <class E, std::size_t N>
E lookup(const std::string& s, const std::pair<E, const char*> (&table)[N], const char* what) {
  for (const auto& [e, name] : table)
    if (s == name) return e;
  throw std::invalid_argument(std::string("unknown ") + what + ": " + s);
}

template <class E, std::size_t N>
std::string name_of(E e, const std::pair<E, const char*> (&table)[N]) {
  for (const auto& [k, name] : table)
    if (k == e) return name;
  return "?";
}

constexpr std::pair<Relation, const char*> kRelations[] = {
    {Relation::equal, "equal"}, {Relation::at_least, "at_least"}, {Relation::info, "info"}};
constexpr std::pair<Status, const char*> kStatuses[] = {
    {Status::pass, "pass"}, {Status::fail, "fail"}, {Status::skip, "skip"}, {Status::info, "info"}};
constexpr std::pair<ScanKind, const char*> kKinds[] = {{ScanKind::good_prime, "good_prime"},
                                                       {ScanKind::wieferich, "wieferich"}};
constexpr std::pair<Verdict, const char*> kVerdicts[] = {{Verdict::cauchy_evidence, "cauchy-evidence"},
                                                         {Verdict::divergence_evidence, "divergence-evidence"},
                                                         {Verdict::inconclusive, "inconclusive"}};

ordered_json params_json(const Params& p) {
  ordered_json o = ordered_json::object();
  for (const auto& [k, v] : p) o[k] = v;
  return o;
}

Params params_from(const ordered_json& o) {
  Params p;
  for (auto it = o.begin(); it != o.end(); ++it) p.emplace_back(it.key(), it.value().get<std::string>());
  return p;
}

std::string join_params(const Params& p) {
  std::string s;
  for (const auto& [k, v] : p) {
    if (!s.empty()) s += ';';
    s += k + "=" + v;
  }
  return s;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

ordered_json scan_row(const ScanReport& s, const ScanException& e) {
  ordered_json r;
  r["p"] = e.p;
  if (s.kind == ScanKind::good_prime) {
    r["n"] = e.n;
    r["nu"] = e.censored ? ">=" + std::to_string(e.nu) : std::to_string(e.nu);
  }
  return r;
}

ScanException scan_row_from(const ScanReport& s, const ordered_json& r) {
  ScanException e;
  e.p = r.at("p").get<Prime>();
  if (s.kind == ScanKind::good_prime) {
    e.n = r.at("n").get<std::uint64_t>();
    auto nu = r.at("nu").get<std::string>();
    e.censored = nu.rfind(">=", 0) == 0;
    e.nu = std::stoll(e.censored ? nu.substr(2) : nu);
  }
  return e;
}

}  // namespace

std::string to_string(Relation r) { return name_of(r, kRelations); }
std::string to_string(Status s) { return name_of(s, kStatuses); }
std::string to_string(ScanKind k) { return name_of(k, kKinds); }
std::string to_string(Verdict v) { return name_of(v, kVerdicts); }
Relation relation_from_string(const std::string& s) { return lookup(s, kRelations, "relation"); }
Status status_from_string(const std::string& s) { return lookup(s, kStatuses, "status"); }
Verdict verdict_from_string(const std::string& s) { return lookup(s, kVerdicts, "verdict"); }

VerificationReport check_equal(std::string id, Params params, const std::string& expected,
                               const std::string& measured, std::string notes) {
  return {std::move(id), std::move(params), Relation::equal, expected, measured,
          expected == measured ? Status::pass : Status::fail, std::move(notes)};
}

VerificationReport check_equal(std::string id, Params params, std::int64_t expected, std::int64_t measured,
                               std::string notes) {
  return check_equal(std::move(id), std::move(params), std::to_string(expected), std::to_string(measured),
                     std::move(notes));
}

VerificationReport check_at_least(std::string id, Params params, std::int64_t bound, const ValuationBound& measured,
                                  std::string notes) {
  return {std::move(id), std::move(params), Relation::at_least, ">=" + std::to_string(bound), measured.to_string(),
          measured.at_least(bound) ? Status::pass : Status::fail, std::move(notes)};
}

VerificationReport check_true(std::string id, Params params, bool holds, std::string notes) {
  return check_equal(std::move(id), std::move(params), "true", holds ? "true" : "false", std::move(notes));
}

VerificationReport skipped(std::string id, Params params, std::string notes) {
  return {std::move(id), std::move(params), Relation::info, "", "", Status::skip, std::move(notes)};
}

VerificationReport informational(std::string id, Params params, std::string expected, std::string measured,
                                 std::string notes) {
  return {std::move(id), std::move(params), Relation::info, std::move(expected), std::move(measured), Status::info,
          std::move(notes)};
}

std::size_t Document::pass_count() const {
  auto n = static_cast<std::size_t>(
      std::count_if(checks.begin(), checks.end(), [](const auto& r) { return r.status == Status::pass; }));
  if (definability) {
    for (const auto& r : definability->rows) n += r.status == Status::pass;
    if (definability->expected_verdict) n += *definability->expected_verdict == definability->verdict;
  }
  return n;
}

std::size_t Document::fail_count() const {
  auto n = static_cast<std::size_t>(
      std::count_if(checks.begin(), checks.end(), [](const auto& r) { return r.status == Status::fail; }));
  if (definability) {
    for (const auto& r : definability->rows) n += r.status == Status::fail;
    if (definability->expected_verdict) n += *definability->expected_verdict != definability->verdict;
  }
  return n;
}

std::size_t Document::skip_count() const {
  return static_cast<std::size_t>(
      std::count_if(checks.begin(), checks.end(), [](const auto& r) { return r.status == Status::skip; }));
}

ordered_json to_json(const Document& d) {
  ordered_json j;
  j["command"] = d.command;
  j["config"] = params_json(d.config);
  ordered_json rows = ordered_json::array();
  for (const auto& r : d.checks) {
    ordered_json o;
    o["check_id"] = r.check_id;
    o["params"] = params_json(r.params);
    o["relation"] = to_string(r.relation);
    o["expected"] = r.expected;
    o["measured"] = r.measured;
    o["status"] = to_string(r.status);
    o["notes"] = r.notes;
    rows.push_back(std::move(o));
  }
  if (d.scan) {
    for (const auto& e : d.scan->exceptions) rows.push_back(scan_row(*d.scan, e));
    ordered_json s;
    s["kind"] = to_string(d.scan->kind);
    s["lo"] = d.scan->lo;
    s["hi"] = d.scan->hi;
    s["depth"] = d.scan->depth;
    s["checked_count"] = d.scan->checked_count;
    s["checkpoint"] = d.scan->checkpoint;
    j["scan"] = std::move(s);
  }
  if (d.definability) {
    const auto& def = *d.definability;
    for (const auto& r : def.rows) {
      ordered_json o;
      o["n"] = r.n;
      o["x_n"] = r.x_n;
      o["nu_f"] = r.nu_f;
      o["nu_diff"] = r.nu_diff;
      o["residue"] = r.residue;
      o["expected"] = r.expected;
      o["status"] = to_string(r.status);
      rows.push_back(std::move(o));
    }
    ordered_json s;
    s["spec"] = def.spec;
    s["p"] = def.p;
    s["depth"] = def.depth;
    s["verdict"] = to_string(def.verdict);
    s["theorem_tag"] = def.theorem_tag;
    s["expected_verdict"] = def.expected_verdict ? to_string(*def.expected_verdict) : "";
    s["truncated"] = def.truncated;
    s["notes"] = def.notes;
    j["definability"] = std::move(s);
  }
  j["rows"] = std::move(rows);
  j["pass_count"] = d.pass_count();
  j["fail_count"] = d.fail_count();
  j["skip_count"] = d.skip_count();
  return j;
}

Document document_from_json(const ordered_json& j) {
  Document d;
  d.command = j.at("command").get<std::string>();
  d.config = params_from(j.at("config"));
  const auto& rows = j.at("rows");
  if (j.contains("scan")) {
    const auto& s = j["scan"];
    ScanReport r;
    r.kind = lookup(s.at("kind").get<std::string>(), kKinds, "scan kind");
    r.lo = s.at("lo").get<std::uint64_t>();
    r.hi = s.at("hi").get<std::uint64_t>();
    r.depth = s.at("depth").get<int>();
    r.checked_count = s.at("checked_count").get<std::uint64_t>();
    r.checkpoint = s.at("checkpoint").get<std::uint64_t>();
    for (const auto& row : rows) r.exceptions.push_back(scan_row_from(r, row));
    d.scan = std::move(r);
    return d;
  }
  if (j.contains("definability")) {
    const auto& s = j["definability"];
    DefinabilityReport r;
    r.spec = s.at("spec").get<std::string>();
    r.p = s.at("p").get<Prime>();
    r.depth = s.at("depth").get<std::uint64_t>();
    r.verdict = verdict_from_string(s.at("verdict").get<std::string>());
    r.theorem_tag = s.at("theorem_tag").get<std::string>();
    auto ev = s.at("expected_verdict").get<std::string>();
    if (!ev.empty()) r.expected_verdict = verdict_from_string(ev);
    r.truncated = s.at("truncated").get<bool>();
    r.notes = s.at("notes").get<std::string>();
    for (const auto& row : rows) {
      DefinabilityRow x;
      x.n = row.at("n").get<std::uint64_t>();
      x.x_n = row.at("x_n").get<std::string>();
      x.nu_f = row.at("nu_f").get<std::int64_t>();
      x.nu_diff = row.at("nu_diff").get<std::string>();
      x.residue = row.at("residue").get<std::string>();
      x.expected = row.at("expected").get<std::string>();
      x.status = status_from_string(row.at("status").get<std::string>());
      r.rows.push_back(std::move(x));
    }
    d.definability = std::move(r);
    return d;
  }
  for (const auto& row : rows) {
    VerificationReport r;
    r.check_id = row.at("check_id").get<std::string>();
    r.params = params_from(row.at("params"));
    r.relation = relation_from_string(row.at("relation").get<std::string>());
    r.expected = row.at("expected").get<std::string>();
    r.measured = row.at("measured").get<std::string>();
    r.status = status_from_string(row.at("status").get<std::string>());
    r.notes = row.at("notes").get<std::string>();
    d.checks.push_back(std::move(r));
  }
  return d;
}

std::string to_csv(const Document& d) {
  std::ostringstream os;
  if (d.scan) {
    os << (d.scan->kind == ScanKind::good_prime ? "p,n,nu\n" : "p\n");
    for (const auto& e : d.scan->exceptions) {
      os << e.p;
      if (d.scan->kind == ScanKind::good_prime) os << ',' << e.n << ',' << (e.censored ? ">=" : "") << e.nu;
      os << '\n';
    }
    return os.str();
  }
  if (d.definability) {
    os << "n,x_n,nu_f,nu_diff,residue,expected,status\n";
    for (const auto& r : d.definability->rows)
      os << r.n << ',' << r.x_n << ',' << r.nu_f << ',' << csv_field(r.nu_diff) << ',' << r.residue << ','
         << csv_field(r.expected) << ',' << to_string(r.status) << '\n';
    return os.str();
  }
  os << "check_id,params,relation,expected,measured,status,notes\n";
  for (const auto& r : d.checks)
    os << csv_field(r.check_id) << ',' << csv_field(join_params(r.params)) << ',' << to_string(r.relation) << ','
       << csv_field(r.expected) << ',' << csv_field(r.measured) << ',' << to_string(r.status) << ','
       << csv_field(r.notes) << '\n';
  return os.str();
}

std::string to_text(const Document& d) {
  std::ostringstream os;
  os << d.command;
  for (const auto& [k, v] : d.config) os << ' ' << k << '=' << v;
  os << '\n';
  for (const auto& r : d.checks) {
    os << '[' << to_string(r.status) << "] " << r.check_id;
    if (!r.params.empty()) os << " (" << join_params(r.params) << ')';
    if (r.relation == Relation::info && r.expected.empty()) {
      if (!r.measured.empty()) os << ": " << r.measured;
    } else {
      os << ": expected " << r.expected << ", measured " << r.measured;
    }
    if (!r.notes.empty()) os << "  # " << r.notes;
    os << '\n';
  }
  if (d.scan) {
    const auto& s = *d.scan;
    os << to_string(s.kind) << " [" << s.lo << ", " << s.hi << ") primes checked " << s.checked_count
       << ", checkpoint " << s.checkpoint << '\n';
    for (const auto& e : s.exceptions) {
      os << "  p=" << e.p;
      if (s.kind == ScanKind::good_prime) os << " n=" << e.n << " nu=" << (e.censored ? ">=" : "") << e.nu;
      os << '\n';
    }
    os << s.exceptions.size() << " exception(s)\n";
  }
  if (d.definability) {
    const auto& def = *d.definability;
    os << def.spec << " p=" << def.p << " depth=" << def.depth << '\n';
    for (const auto& r : def.rows) {
      os << "  n=" << r.n << " x_n=" << r.x_n << " nu(f)=" << r.nu_f;
      if (!r.nu_diff.empty()) os << " nu(diff)=" << r.nu_diff;
      if (!r.residue.empty()) os << " f mod p=" << r.residue;
      if (!r.expected.empty()) os << " expected " << r.expected << " [" << to_string(r.status) << ']';
      os << '\n';
    }
    os << "verdict: " << to_string(def.verdict);
    if (!def.theorem_tag.empty()) os << " (tag " << def.theorem_tag << ')';
    if (def.expected_verdict) os << ", expected " << to_string(*def.expected_verdict);
    if (def.truncated) os << ", truncated";
    os << '\n';
    if (!def.notes.empty()) os << def.notes << '\n';
  }
  os << "pass " << d.pass_count() << ", fail " << d.fail_count() << ", skip " << d.skip_count() << '\n';
  return os.str();
}

}  // namespace invbinom
