// invbinom: command-line front end for the f(n) = sum 1/C(n,k) toolkit.
//
// Exit codes: 0 every executed check passed, 1 some check failed (or engines
// disagreed), 2 usage error, 3 an engine cap was hit (partial output).

#include <cstdlib>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "invbinom/definability.hpp"
#include "invbinom/primes.hpp"
#include "invbinom/scanners.hpp"
#include "invbinom/verifiers.hpp"

using namespace invbinom;

namespace {

struct RunConfig {
  Prime prime = 2;
  int precision = 8;
  EngineCaps caps;
  std::uint64_t scan_ceiling = 0;
  std::uint64_t seed = 0;
  std::string output = "json";
  std::string checkpoint_path;
  unsigned threads = 0;
};

std::uint64_t env_or(const char* name, std::uint64_t fallback) {
  const char* v = std::getenv(name);
  if (!v || !*v) return fallback;
  try {
    return std::stoull(v);
  } catch (const std::exception&) {
    throw CLI::ValidationError(name, std::string("not a number: ") + v);
  }
}

std::vector<std::uint64_t> parse_list(const std::string& text) {
  std::vector<std::uint64_t> out;
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, ',');)
    if (!item.empty()) out.push_back(std::stoull(item));
  return out;
}

/// rational:<q> (or a bare q), digits:<prefix>|<period>, sparse2:<exponents>.
PadicIntegerSpec parse_spec(const std::string& text, Prime p) {
  auto colon = text.find(':');
  std::string kind = colon == std::string::npos ? "rational" : text.substr(0, colon);
  std::string body = colon == std::string::npos ? text : text.substr(colon + 1);
  if (kind == "rational") return PadicIntegerSpec::from_rational(Rational::parse(body), p);
  if (kind == "digits") {
    auto bar = body.find('|');
    return PadicIntegerSpec::from_digits(p, parse_list(body.substr(0, bar)),
                                         bar == std::string::npos ? std::vector<std::uint64_t>{}
                                                                  : parse_list(body.substr(bar + 1)));
  }
  if (kind == "sparse2") return PadicIntegerSpec::from_sparse2(parse_list(body), p);
  throw std::invalid_argument("unknown spec kind '" + kind + "'");
}

std::vector<std::uint64_t> range_list(std::uint64_t lo, std::uint64_t hi) {
  std::vector<std::uint64_t> out;
  for (auto v = lo; v <= hi; ++v) out.push_back(v);
  return out;
}

int emit(const Document& doc, const RunConfig& cfg) {
  if (cfg.output == "csv") std::cout << to_csv(doc);
  else if (cfg.output == "text") std::cout << to_text(doc);
  else std::cout << to_json(doc).dump(2) << '\n';
  if (doc.fail_count() > 0) return 1;
  bool capped = std::any_of(doc.checks.begin(), doc.checks.end(), [](const VerificationReport& r) {
    return r.status == Status::skip && r.notes.rfind("cap exceeded", 0) == 0;
  });
  if (capped || (doc.definability && doc.definability->truncated)) return 3;
  return 0;
}

void append(std::vector<VerificationReport>& to, std::vector<VerificationReport> rows) {
  to.insert(to.end(), std::make_move_iterator(rows.begin()), std::make_move_iterator(rows.end()));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact and p-adic computations for f(n) = sum_k 1/C(n,k)"};
  app.require_subcommand(1);
  RunConfig cfg;
  std::uint64_t exact_cap = 0, modular_cap = 0;
  app.add_option("--format", cfg.output, "Output format")->check(CLI::IsMember({"json", "csv", "text"}));
  app.add_option("--threads", cfg.threads, "Worker threads (0: all cores)");
  app.add_option("--seed", cfg.seed, "Sampling seed");
  app.add_option("--exact-cap", exact_cap, "Largest n for exact rationals (env INVBINOM_EXACT_CAP)");
  app.add_option("--modular-cap", modular_cap, "Largest n for the modular engines (env INVBINOM_MODULAR_CAP)");
  app.add_option("--scan-ceiling", cfg.scan_ceiling, "Largest scan bound (env INVBINOM_SCAN_CEILING)");

  std::uint64_t n = 0, m = 0;
  auto* fval = app.add_subcommand("fval", "nu_p(f(n)) and the leading unit digits");
  fval->add_option("n", n)->required();
  fval->add_option("--prime,-p", cfg.prime)->check(CLI::PositiveNumber);
  fval->add_option("--precision", cfg.precision)->check(CLI::Range(1, 4096));

  auto* fdiff = app.add_subcommand("fdiff", "nu_p(f(m) - f(n))");
  fdiff->add_option("m", m)->required();
  fdiff->add_option("n", n)->required();
  fdiff->add_option("--prime,-p", cfg.prime);

  std::string target;
  std::uint64_t kmax = 0, emax = 0, bound = 2000, i_budget = 40, samples = 500, c = 13;
  std::string primes_arg, c_arg, j_arg;
  bool no_conjecture = false;
  auto* verify = app.add_subcommand("verify", "Run a verification grid");
  verify->add_option("target", target)
      ->required()
      ->check(CLI::IsMember({"prop1.1", "thm1.2", "sec2", "sec3", "sec4", "sec5", "all"}));
  verify->add_option("--prime,-p", cfg.prime, "Prime for thm1.2 and sec5");
  verify->add_option("--primes", primes_arg, "Comma-separated primes for sec2 and sec3");
  verify->add_option("--kmax", kmax);
  verify->add_option("--emax", emax);
  verify->add_option("--bound", bound, "Bound for prop1.1");
  verify->add_option("--c", c, "c for sec5");
  verify->add_option("--c-list", c_arg, "Comma-separated c values for sec3");
  verify->add_option("--j", j_arg, "Comma-separated j values for sec5");
  verify->add_option("--i-budget", i_budget);
  verify->add_option("--samples", samples);
  verify->add_flag("--no-conjecture", no_conjecture);

  std::uint64_t lo = 3, hi = 10'000;
  int depth_scan = 3;
  bool no_oracle = false, progress = false;
  auto* scan_good = app.add_subcommand("scan-good", "Primes with some 1 <= n <= p-2 and p^2 | f(n)");
  scan_good->add_option("--lo", lo);
  scan_good->add_option("--hi", hi);
  scan_good->add_option("--depth", depth_scan)->check(CLI::Range(2, 64));
  scan_good->add_flag("--no-oracle", no_oracle);
  scan_good->add_flag("--progress", progress);
  scan_good->add_option("--checkpoint", cfg.checkpoint_path);

  auto* scan_w = app.add_subcommand("scan-wieferich", "Primes with 2^{p-1} == 1 mod p^2");
  scan_w->add_option("--lo", lo);
  scan_w->add_option("--hi", hi);
  scan_w->add_flag("--progress", progress);
  scan_w->add_option("--checkpoint", cfg.checkpoint_path);

  std::string spec_text;
  std::uint64_t depth_def = 10;
  auto* definable = app.add_subcommand("definable", "f along the partial sums of a p-adic integer");
  definable->add_option("--spec", spec_text, "rational:<q> | digits:<prefix>|<period> | sparse2:<e0,e1,...>")
      ->required();
  definable->add_option("--prime,-p", cfg.prime);
  definable->add_option("--depth", depth_def);

  int eps_exp = 0;
  std::optional<int> L;
  auto* witness = app.add_subcommand("witness", "m near n with f(m) far from f(n)");
  witness->add_option("--n", n)->required();
  witness->add_option("--eps-exp", eps_exp)->required()->check(CLI::Range(1, 60));
  witness->add_option("--L", L);
  witness->add_option("--prime,-p", cfg.prime);

  try {
    app.parse(argc, argv);
    cfg.caps.exact_n_cap = exact_cap ? exact_cap : env_or("INVBINOM_EXACT_CAP", cfg.caps.exact_n_cap);
    if (std::uint64_t mc = modular_cap ? modular_cap : env_or("INVBINOM_MODULAR_CAP", 0)) {
      cfg.caps.modular_p2_cap = mc;
      cfg.caps.modular_odd_cap = mc;
    }
    if (!cfg.scan_ceiling) cfg.scan_ceiling = env_or("INVBINOM_SCAN_CEILING", 0);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  Document doc;
  doc.config = {{"format", cfg.output}, {"seed", std::to_string(cfg.seed)}};
  auto cfg_add = [&](const char* k, const auto& v) {
    std::ostringstream os;
    os << v;
    doc.config.emplace_back(k, os.str());
  };
  VerifyOptions vopt{cfg.caps, cfg.seed};

  try {
    if (*fval) {
      doc.command = "fval";
      cfg_add("n", n);
      cfg_add("prime", cfg.prime);
      cfg_add("precision", cfg.precision);
      if (!is_prime(cfg.prime)) throw std::invalid_argument("--prime must be prime");
      PadicValue v = f_padic(n, cfg.prime, cfg.precision, cfg.caps);
      Params params{{"n", std::to_string(n)}, {"p", std::to_string(cfg.prime)}};
      doc.checks.push_back(informational("f-valuation", params, "", std::to_string(v.valuation())));
      doc.checks.push_back(informational("f-unit-digits", params, "", v.unit_digits(), "base-p digits of the unit, least significant first"));
      if (n <= cfg.caps.exact_n_cap) doc.checks.push_back(informational("f-exact", params, "", f_exact(n, cfg.caps).to_string()));
    } else if (*fdiff) {
      doc.command = "fdiff";
      cfg_add("m", m);
      cfg_add("n", n);
      cfg_add("prime", cfg.prime);
      if (!is_prime(cfg.prime)) throw std::invalid_argument("--prime must be prime");
      if (m == n) throw std::invalid_argument("m and n must differ");
      std::int64_t v = f_diff_valuation(m, n, cfg.prime, cfg.caps);
      doc.checks.push_back(informational("f-diff-valuation",
                                         {{"m", std::to_string(m)}, {"n", std::to_string(n)}, {"p", std::to_string(cfg.prime)}},
                                         "", std::to_string(v)));
    } else if (*verify) {
      doc.command = "verify " + target;
      const bool all = target == "all";
      auto primes = primes_arg.empty() ? std::vector<std::uint64_t>{} : parse_list(primes_arg);
      if (target == "prop1.1" || all) {
        cfg_add("bound", bound);
        append(doc.checks, verify_prop_1_1(bound, vopt));
      }
      if (target == "thm1.2") {
        std::uint64_t k = kmax ? kmax : (cfg.prime == 2 ? 6 : 4);
        std::uint64_t e = emax ? emax : (cfg.prime == 2 ? 12 : 4);
        cfg_add("prime", cfg.prime);
        cfg_add("kmax", k);
        cfg_add("emax", e);
        append(doc.checks, verify_thm_1_2(cfg.prime, k, range_list(1, e), vopt));
      } else if (all) {
        append(doc.checks, verify_thm_1_2(2, 6, range_list(1, 12), vopt));
        for (Prime p : {3, 5, 7, 11, 13}) append(doc.checks, verify_thm_1_2(p, 4, range_list(1, 4), vopt));
      }
      if (target == "sec2" || all) {
        int e = emax ? static_cast<int>(emax) : 4;
        append(doc.checks, primes.empty() ? verify_section2({2, 3, 5, 7, 11, 13}, e, vopt) : verify_section2(primes, e, vopt));
      }
      if (target == "sec3" || all) {
        int e = emax ? static_cast<int>(emax) : 3;
        auto cs = c_arg.empty() ? std::vector<std::uint64_t>{} : parse_list(c_arg);
        append(doc.checks, primes.empty() ? verify_section3({3, 5, 7, 11, 13, 23}, cs, e, i_budget, vopt)
                                          : verify_section3(primes, cs, e, i_budget, vopt));
      }
      if (target == "sec4" || all) {
        int e = emax ? static_cast<int>(emax) : 14;
        append(doc.checks, verify_section4(e, 12, !no_conjecture, vopt));
      }
      if (target == "sec5" || all) {
        Prime p = target == "sec5" && cfg.prime != 2 ? cfg.prime : 23;
        auto js = j_arg.empty() ? std::vector<std::uint64_t>{} : parse_list(j_arg);
        append(doc.checks, verify_section5(p, c, js, samples, vopt));
      }
    } else if (*scan_good || *scan_w) {
      const bool good = scan_good->parsed();
      doc.command = good ? "scan-good" : "scan-wieferich";
      cfg_add("lo", lo);
      cfg_add("hi", hi);
      if (good) cfg_add("depth", depth_scan);
      ScanOptions so;
      so.depth = depth_scan;
      so.oracle_check = !no_oracle;
      so.threads = cfg.threads;
      so.ceiling = cfg.scan_ceiling;
      so.progress = progress;
      if (!cfg.checkpoint_path.empty()) so.checkpoint_path = cfg.checkpoint_path;
      doc.scan = good ? scan_good_primes(lo, hi, so) : scan_wieferich(lo, hi, so);
    } else if (*definable) {
      doc.command = "definable";
      cfg_add("spec", spec_text);
      cfg_add("prime", cfg.prime);
      cfg_add("depth", depth_def);
      if (!is_prime(cfg.prime)) throw std::invalid_argument("--prime must be prime");
      doc.definability = analyze_definability(parse_spec(spec_text, cfg.prime), depth_def, cfg.caps);
    } else if (*witness) {
      doc.command = "witness";
      cfg_add("n", n);
      cfg_add("eps_exp", eps_exp);
      cfg_add("prime", cfg.prime);
      if (!is_prime(cfg.prime)) throw std::invalid_argument("--prime must be prime");
      auto w = find_discontinuity_witness(n, eps_exp, cfg.prime, L, cfg.caps);
      Params params{{"n", std::to_string(n)}, {"eps_exp", std::to_string(eps_exp)}, {"L", std::to_string(w.L)},
                    {"m", std::to_string(w.m)}};
      std::string how = w.exact_checked ? "certified and exact" : "certified";
      doc.checks.push_back(check_equal("witness-metric-distance", params, eps_exp, w.nu_metric,
                                       "d_p(m, n) = p^-" + std::to_string(w.nu_metric)));
      doc.checks.push_back(check_at_least("witness-image-distance", params, 1,
                                          ValuationBound{-w.nu_image, true, false},
                                          "-nu_p(f(m) - f(n)); d_p(f(m), f(n)) = p^" + std::to_string(-w.nu_image) +
                                              ", " + how));
      doc.checks.push_back(check_equal("witness-image-valuation", params, w.predicted_nu_f_m, w.nu_image, how));
    }
  } catch (const CapExceeded& e) {
    std::cerr << "invbinom: " << e.what() << '\n';
    emit(doc, cfg);
    return 3;
  } catch (const EngineDisagreement& e) {
    std::cerr << "invbinom: engine disagreement: " << e.what() << '\n';
    return 1;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invbinom: " << e.what() << '\n';
    return 2;
  } catch (const std::domain_error& e) {
    std::cerr << "invbinom: " << e.what() << '\n';
    return 2;
  } catch (const CheckpointMismatch& e) {
    std::cerr << "invbinom: " << e.what() << '\n';
    return 2;
  }
  return emit(doc, cfg);
}
