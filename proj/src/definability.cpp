#include "invbinom/definability.hpp"

#include <algorithm>

#include "invbinom/scanners.hpp"
#include "invbinom/verifiers.hpp"

namespace invbinom {

namespace {

constexpr int kRowPrecision = 32;

std::int64_t fixed_offset(Prime p) { return p == 2 ? 0 : wieferich_offset(p); }

/// nu_p(f(p^e - k - 1)) as the valuation formula states it.
std::int64_t offset_formula(Prime p, std::uint64_t k, std::int64_t e) {
  std::int64_t nu_k = valuation_u64(k, p);
  return (p == 2 ? static_cast<std::int64_t>(k) : fixed_offset(p)) + nu_k - e;
}

/// "Good odd prime or 23": every odd prime below 10^8 qualifies.
bool good_or_23(Prime p) {
  if (p == 2) return false;
  if (p < 100'000'000) return true;
  if (p >= (std::uint64_t{1} << 31)) return false;
  return good_prime_exceptions(p, 2).empty();
}

enum class Tag { none, minus_one, negative_integer, sparse_binary, odd_non_integer };

const char* tag_name(Tag t) {
  switch (t) {
    case Tag::minus_one: return "minus-one";
    case Tag::negative_integer: return "negative-integer";
    case Tag::sparse_binary: return "sparse-binary";
    case Tag::odd_non_integer: return "odd-non-integer";
    case Tag::none: break;
  }
  return "";
}

/// e_k > k + sum_{i<k} 2^{e_i} for every k >= 1 with e_k <= depth.
bool sparse_hypothesis(const std::vector<std::uint64_t>& ex, std::uint64_t depth) {
  std::size_t used = 0;
  while (used < ex.size() && ex[used] <= depth) ++used;
  if (used < 2) return false;
  BigInt sum = 0;
  for (std::size_t k = 0; k < used; ++k) {
    if (k >= 1 && BigInt(static_cast<unsigned long>(ex[k])) <= sum + static_cast<unsigned long>(k)) return false;
    sum += prime_power(2, ex[k]);
  }
  return true;
}

}  // namespace

DefinabilityReport analyze_definability(const PadicIntegerSpec& spec, std::uint64_t depth, const EngineCaps& caps) {
  const Prime p = spec.prime();
  DefinabilityReport report;
  report.spec = spec.describe();
  report.p = p;
  report.depth = depth;

  // Theorem whose hypothesis the spec meets.
  Tag tag = Tag::none;
  std::uint64_t k = 0;
  auto q = spec.as_rational();
  bool lw = false;
  try {
    fixed_offset(p);
  } catch (const std::domain_error&) {
    lw = true;
  }
  if (q && *q == Rational(-1)) {
    tag = Tag::minus_one;
  } else if (q && q->denominator() == 1 && *q < Rational(-1) && !lw && mpz_sizeinbase(q->numerator().get_mpz_t(), 2) < 62) {
    tag = Tag::negative_integer;
    k = BigInt(-q->numerator() - 1).get_ui();
  } else if (spec.form() == PadicIntegerSpec::Form::sparse2 && sparse_hypothesis(spec.exponents(), depth)) {
    tag = Tag::sparse_binary;
  } else if (p != 2 && !spec.is_natural() && good_or_23(p)) {
    tag = Tag::odd_non_integer;
  }
  report.theorem_tag = tag_name(tag);
  if (tag == Tag::minus_one || tag == Tag::sparse_binary) report.expected_verdict = Verdict::cauchy_evidence;
  if (tag == Tag::negative_integer || tag == Tag::odd_non_integer) report.expected_verdict = Verdict::divergence_evidence;

  // Partial sums that differ from their predecessor.
  const std::uint64_t cap = p == 2 ? caps.modular_p2_cap : caps.modular_odd_cap;
  std::vector<std::uint64_t> digits = spec.digits(depth + 1);
  std::vector<std::uint64_t> ns, xs;
  BigInt x = 0;
  for (std::uint64_t n = 0; n <= depth; ++n) {
    if (digits[n] == 0 && n > 0) continue;
    x += prime_power(p, n) * static_cast<unsigned long>(digits[n]);
    if (x > static_cast<unsigned long>(cap)) {
      report.truncated = true;
      report.notes = "cap exceeded: x_" + std::to_string(n) + " is beyond the modular cap " + std::to_string(cap);
      break;
    }
    ns.push_back(n);
    xs.push_back(x.get_ui());
  }

  std::vector<PadicValue> vals;
  for (auto xn : xs) vals.push_back(f_padic(xn, p, kRowPrecision, caps));
  std::vector<ValuationBound> diffs;
  for (std::size_t i = 0; i + 1 < vals.size(); ++i) {
    ValuationBound d = diff_valuation(vals[i + 1], vals[i]);
    if (!d.exact) {
      try {
        d = {f_diff_valuation(xs[i + 1], xs[i], p, caps), true, false};
      } catch (const PrecisionExhausted&) {
      }
    }
    diffs.push_back(d);
  }

  std::size_t tail_start = diffs.size() - std::min(diffs.size(), std::max<std::size_t>(3, (diffs.size() + 1) / 2));
  const std::uint64_t min_e = tag == Tag::negative_integer ? offset_formula_min_e(p, k) : 0;
  if (tag == Tag::negative_integer || tag == Tag::sparse_binary) tail_start = diffs.size();

  std::size_t exponent_index = 0;  // sparse rows: x = E_{exponent_index - 1}
  for (std::size_t i = 0; i < xs.size(); ++i) {
    DefinabilityRow row;
    row.n = ns[i];
    row.x_n = std::to_string(xs[i]);
    row.nu_f = vals[i].valuation();
    if (i < diffs.size()) row.nu_diff = diffs[i].to_string();
    if (row.nu_f >= 0) row.residue = row.nu_f > 0 ? "0" : vals[i].residue(1).get_str();
    const std::int64_t e = static_cast<std::int64_t>(ns[i]) + 1;

    switch (tag) {
      case Tag::minus_one:
        if (p == 2 && e >= 3) {
          row.expected = "nu_f>=" + std::to_string(2 * e);
          row.status = row.nu_f >= 2 * e ? Status::pass : Status::fail;
        } else if (p != 2) {
          row.expected = "residue=1";
          row.status = row.residue == "1" ? Status::pass : Status::fail;
        }
        break;
      case Tag::negative_integer:
        if (static_cast<std::uint64_t>(e) >= min_e && prime_power(p, static_cast<std::uint64_t>(e)) > static_cast<unsigned long>(k + 1)) {
          std::int64_t want = offset_formula(p, k, e);
          row.expected = "nu_f=" + std::to_string(want);
          row.status = row.nu_f == want ? Status::pass : Status::fail;
          tail_start = std::min(tail_start, i);
        }
        break;
      case Tag::sparse_binary:
        if (spec.exponents().size() > exponent_index && ns[i] == spec.exponents()[exponent_index]) {
          ++exponent_index;
          tail_start = std::min(tail_start, i);
          if (i < diffs.size()) {
            // diff to E_{exponent_index}
            auto want = static_cast<std::int64_t>(exponent_index);
            row.expected = "nu_diff>=" + std::to_string(want);
            row.status = diffs[i].at_least(want) ? Status::pass : Status::fail;
          }
        }
        break;
      case Tag::odd_non_integer:
        if (i < diffs.size() && BigInt(static_cast<unsigned long>(xs[i])) + 1 < prime_power(p, ns[i + 1])) {
          row.expected = "nu_diff<=0";
          row.status = diffs[i].exact && !diffs[i].infinite && diffs[i].value <= 0 ? Status::pass : Status::fail;
        }
        break;
      case Tag::none:
        break;
    }
    report.rows.push_back(std::move(row));
  }

  // Verdict over the tail of the window.
  // A natural x whose last digit lies inside the window gives a constant tail.
  bool constant_tail = false;
  if (spec.is_natural() && !report.truncated) {
    BigInt whole = spec.as_rational()->numerator();
    constant_tail = whole == partial_sum(spec, depth);
  }
  if (constant_tail) {
    report.verdict = Verdict::cauchy_evidence;
    report.notes += std::string(report.notes.empty() ? "" : "; ") + "x is natural: the sequence is eventually constant";
  } else {
    std::vector<ValuationBound> tail(diffs.begin() + static_cast<std::ptrdiff_t>(std::min(tail_start, diffs.size())),
                                     diffs.end());
    bool diverges = std::any_of(tail.begin(), tail.end(),
                                [](const ValuationBound& d) { return d.exact && !d.infinite && d.value <= 0; });
    bool increasing = tail.size() >= 2;
    for (std::size_t i = 0; i < tail.size() && increasing; ++i) {
      if (!tail[i].infinite && tail[i].value <= 0) increasing = false;
      if (i > 0 && !tail[i].infinite && (tail[i - 1].infinite || tail[i].value <= tail[i - 1].value)) increasing = false;
    }
    report.verdict = diverges ? Verdict::divergence_evidence
                              : (increasing ? Verdict::cauchy_evidence : Verdict::inconclusive);
  }
  return report;
}

DiscontinuityWitness find_discontinuity_witness(std::uint64_t n, int eps_exp, Prime p, std::optional<int> L,
                                                const EngineCaps& caps, std::uint64_t exact_limit) {
  if (eps_exp < 1) throw std::invalid_argument("eps_exp must be at least 1");
  const std::int64_t delta = fixed_offset(p);  // throws for p in LW
  DiscontinuityWitness w;
  w.p = p;
  w.n = n;
  w.eps_exp = eps_exp;

  // k + 1 == -n - p^e mod p^{e+1}, so m = p^L - (k+1) == n + p^e mod p^{e+1}.
  const BigInt pe = prime_power(p, static_cast<std::uint64_t>(eps_exp));
  const BigInt pe1 = pe * static_cast<unsigned long>(p);
  BigInt r = -BigInt(static_cast<unsigned long>(n)) - pe;
  mpz_mod(r.get_mpz_t(), r.get_mpz_t(), pe1.get_mpz_t());
  if (r == 0) r = pe1;
  if (r == 1) r += pe1;  // k = 0 is outside the valuation formula
  if (mpz_sizeinbase(r.get_mpz_t(), 2) > 62) throw CapExceeded(0, "cap exceeded: offset does not fit a machine word");
  w.k = r.get_ui() - 1;

  const std::int64_t nu_fn = f_padic(n, p, 8, caps).valuation();
  std::int64_t bound = 1;
  for (std::uint64_t j = 1; j < w.k; ++j)
    bound = std::max<std::int64_t>(bound, (p == 2 ? static_cast<std::int64_t>(j) : delta) + valuation_u64(j, p));
  const std::int64_t base = offset_formula(p, w.k, 0);
  std::int64_t least = std::max<std::int64_t>({bound + 1, eps_exp + 1, base - std::min<std::int64_t>(0, nu_fn) + 1});
  if (L && *L < least)
    throw std::invalid_argument("L = " + std::to_string(*L) + " is below the least admissible " + std::to_string(least));
  w.L = static_cast<int>(L.value_or(least));
  w.predicted_nu_f_m = base - w.L;

  const std::uint64_t cap = p == 2 ? caps.modular_p2_cap : caps.modular_odd_cap;
  BigInt m = prime_power(p, static_cast<std::uint64_t>(w.L)) - r;
  if (m > static_cast<unsigned long>(cap))
    throw CapExceeded(static_cast<std::uint64_t>(w.L), "cap exceeded: witness needs L = " + std::to_string(w.L) +
                                                           ", m = " + m.get_str() + " is beyond the modular cap");
  w.m = m.get_ui();
  w.nu_metric = valuation_u64(w.m > n ? w.m - n : n - w.m, p);
  w.nu_image = f_diff_valuation(w.m, n, p, caps);

  if (w.m <= exact_limit && n <= exact_limit) {
    Rational fm = f_exact_identity(w.m), fn = f_exact_identity(n);
    std::int64_t exact_nu = valuation_rational(fm - fn, p);
    if (exact_nu != w.nu_image)
      throw EngineDisagreement("witness valuation differs between exact and modular engines at m=" +
                               std::to_string(w.m));
    w.exact_checked = true;
  }
  return w;
}

}  // namespace invbinom
