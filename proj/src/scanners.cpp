#include "invbinom/scanners.hpp"

#include <algorithm>
#include <atomic>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <mutex>
#include <sstream>
#include <thread>

#include "invbinom/fsum.hpp"
#include "invbinom/primes.hpp"
#include "invbinom/residue.hpp"

namespace invbinom {

namespace {

/// Montgomery arithmetic mod an odd m < 2^62 with R = 2^64. Values stay in
/// [0, m); zero maps to zero, so divisibility tests need no conversion.
class Montgomery {
 public:
  explicit Montgomery(u64 m) : m_(m) {
    u64 inv = m;  // Newton iteration for m^{-1} mod 2^64
    for (int i = 0; i < 6; ++i) inv *= 2 - m * inv;
    neg_inv_ = 0 - inv;
    r_mod_ = static_cast<u64>((static_cast<u128>(1) << 64) % m);
  }
  /// T R^{-1} mod m for T < m R.
  u64 reduce(u128 t) const {
    u64 q = static_cast<u64>(t) * neg_inv_;
    u64 r = static_cast<u64>((t + static_cast<u128>(q) * m_) >> 64);
    return r >= m_ ? r - m_ : r;
  }
  u64 one() const { return r_mod_; }
  u64 add(u64 a, u64 b) const {
    u64 s = a + b;
    return s >= m_ ? s - m_ : s;
  }

 private:
  u64 m_, neg_inv_, r_mod_;
};

/// nu_p(sum_{k=1}^{m} 2^k / k) mod p^(depth+1) for one m < p, capped at depth+1.
std::int64_t prefix_valuation(Prime p, std::uint64_t m, int depth) {
  BigInt mod = prime_power(p, static_cast<std::uint64_t>(depth + 1));
  BigInt a = with_ring(mod, [&](auto ring) {
    // S = A / B with B = m!, a unit for m < p.
    auto A = ring.zero(), B = ring.one(), t = ring.one();
    for (std::uint64_t k = 1; k <= m; ++k) {
      t = ring.add(t, t);
      auto kk = ring.from(k);
      A = ring.add(ring.mul(A, kk), ring.mul(t, B));
      B = ring.mul(B, kk);
    }
    return ring.to_big(A);
  });
  if (a == 0) return depth + 1;
  return strip_prime(a, p);
}

void oracle_check(Prime p, int depth, const std::vector<ScanException>& got) {
  std::vector<Rational> f = f_recursive_table(p - 2);
  std::vector<ScanException> want;
  for (std::uint64_t n = 1; n + 2 <= p; ++n) {
    // f(n) is never zero: every term is positive.
    std::int64_t nu = valuation_rational(f[n], p);
    if (nu >= 2) want.push_back({p, n, std::min<std::int64_t>(nu, depth + 1), nu > depth});
  }
  if (want != got)
    throw EngineDisagreement("scanner fast path disagrees with exact f(n) at p=" + std::to_string(p));
}

struct Block {
  std::uint64_t lo = 0, hi = 0;
  std::vector<ScanException> rows;
};

std::string format_nu(const ScanException& e) { return (e.censored ? ">=" : "") + std::to_string(e.nu); }

void write_block(std::ostream& os, ScanKind kind, const Block& b) {
  std::ostringstream s;
  s << to_string(kind) << ' ' << b.lo << ' ' << b.hi << ' ' << b.rows.size() << '\n';
  for (const auto& e : b.rows) {
    if (kind == ScanKind::good_prime) s << e.p << ' ' << e.n << ' ' << format_nu(e) << '\n';
    else s << e.p << '\n';
  }
  os << s.str() << std::flush;
}

/// Committed blocks of the given kind; a torn trailing block is ignored.
/// `intact` receives the byte length of the committed prefix.
std::vector<Block> read_checkpoint(const std::string& path, ScanKind kind, int depth, std::uintmax_t& intact) {
  std::vector<Block> out;
  intact = 0;
  std::ifstream in(path);
  if (!in) return out;
  std::vector<std::string> lines;
  std::vector<std::uintmax_t> ends;  // byte offset after each complete line
  std::uintmax_t pos = 0;
  for (std::string line; std::getline(in, line);) {
    pos += line.size() + 1;
    if (in.eof()) break;  // no newline: the line itself is torn
    lines.push_back(line);
    ends.push_back(pos);
  }
  for (std::size_t i = 0; i < lines.size();) {
    std::istringstream h(lines[i]);
    std::string tag;
    h >> tag;
    if (tag == "#") {
      std::string k, word;
      int d = 0;
      if (h >> k >> word >> d && k == to_string(kind) && word == "depth" && d != depth)
        throw CheckpointMismatch("checkpoint " + path + " was written at depth " + std::to_string(d));
      intact = ends[i];
      ++i;
      continue;
    }
    Block b;
    std::size_t count = 0;
    if (!(h >> b.lo >> b.hi >> count)) break;
    if (i + count >= lines.size()) break;
    bool ok = true;
    for (std::size_t r = 1; r <= count && ok; ++r) {
      std::istringstream row(lines[i + r]);
      ScanException e;
      ok = static_cast<bool>(row >> e.p);
      if (ok && tag == "good_prime") {
        std::string nu;
        ok = static_cast<bool>(row >> e.n >> nu);
        if (ok) {
          e.censored = nu.rfind(">=", 0) == 0;
          e.nu = std::stoll(e.censored ? nu.substr(2) : nu);
        }
      }
      b.rows.push_back(e);
    }
    if (!ok) break;
    if (tag == to_string(kind)) out.push_back(std::move(b));
    i += count + 1;
    intact = ends[i - 1];
  }
  return out;
}

/// [lo, hi) minus the covered intervals, split into pieces of at most `width`.
std::vector<std::pair<std::uint64_t, std::uint64_t>> pending_ranges(
    std::uint64_t lo, std::uint64_t hi, std::vector<std::pair<std::uint64_t, std::uint64_t>> covered,
    std::uint64_t width) {
  std::sort(covered.begin(), covered.end());
  std::vector<std::pair<std::uint64_t, std::uint64_t>> out;
  auto emit = [&](std::uint64_t a, std::uint64_t b) {
    for (std::uint64_t s = a; s < b; s = std::min(b, s + width)) out.emplace_back(s, std::min(b, s + width));
  };
  std::uint64_t cur = lo;
  for (auto [a, b] : covered) {
    if (b <= cur || a >= hi) continue;
    if (a > cur) emit(cur, a);
    cur = std::max(cur, b);
    if (cur >= hi) break;
  }
  if (cur < hi) emit(cur, hi);
  return out;
}

template <class PerPrime>
ScanReport run_scan(ScanKind kind, std::uint64_t lo, std::uint64_t hi, const ScanOptions& opt, std::uint64_t width,
                    PerPrime per_prime) {
  std::uint64_t ceiling = opt.ceiling ? opt.ceiling
                                      : (kind == ScanKind::good_prime ? kDefaultGoodScanCeiling : kDefaultWieferichCeiling);
  if (hi > ceiling)
    throw CapExceeded(ceiling, "cap exceeded: scan bound " + std::to_string(hi) + " is above the ceiling " +
                                   std::to_string(ceiling));
  if (lo > hi) throw std::invalid_argument("scan range has lo > hi");

  ScanReport report;
  report.kind = kind;
  report.lo = lo;
  report.hi = hi;
  report.depth = kind == ScanKind::good_prime ? opt.depth : 0;

  std::vector<Block> done;
  std::ofstream ck;
  if (opt.checkpoint_path) {
    std::uintmax_t intact = 0;
    done = read_checkpoint(*opt.checkpoint_path, kind, report.depth, intact);
    // Drop a torn tail so later blocks stay readable.
    const auto& path = *opt.checkpoint_path;
    if (std::filesystem::exists(path) && std::filesystem::file_size(path) > intact) {
      if (intact == 0) throw CheckpointMismatch(path + " is not a checkpoint file");
      std::filesystem::resize_file(path, intact);
    }
    bool fresh = intact == 0;
    ck.open(*opt.checkpoint_path, std::ios::app);
    if (!ck) throw std::runtime_error("cannot open checkpoint " + *opt.checkpoint_path);
    if (fresh && kind == ScanKind::good_prime) ck << "# " << to_string(kind) << " depth " << report.depth << '\n' << std::flush;
  }
  std::vector<std::pair<std::uint64_t, std::uint64_t>> covered;
  for (const auto& b : done) covered.emplace_back(b.lo, b.hi);
  auto todo = pending_ranges(lo, hi, covered, width);

  std::vector<std::optional<Block>> results(todo.size());
  std::mutex mu;
  std::size_t next_commit = 0;
  std::atomic<std::size_t> next_task{0};
  std::exception_ptr failure;

  auto worker = [&] {
    for (;;) {
      std::size_t i = next_task.fetch_add(1);
      if (i >= todo.size()) return;
      Block b{todo[i].first, todo[i].second, {}};
      try {
        for (Prime p : primes_in_range(b.lo, b.hi)) per_prime(p, b.rows);
      } catch (...) {
        std::lock_guard lock(mu);
        if (!failure) failure = std::current_exception();
        next_task = todo.size();
        return;
      }
      std::lock_guard lock(mu);
      results[i] = std::move(b);
      // Commit in range order so the file only ever holds a prefix per run.
      while (next_commit < results.size() && results[next_commit]) {
        const Block& c = *results[next_commit];
        if (ck.is_open()) write_block(ck, kind, c);
        if (opt.progress)
          std::cerr << to_string(kind) << ": [" << c.lo << ", " << c.hi << ") done, " << c.rows.size()
                    << " exception(s)\n";
        ++next_commit;
      }
    }
  };

  unsigned threads = opt.threads ? opt.threads : std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(1, todo.size())));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);

  for (auto& b : done) {
    for (auto& e : b.rows)
      if (e.p >= lo && e.p < hi) report.exceptions.push_back(e);
  }
  for (auto& r : results)
    for (auto& e : r->rows) report.exceptions.push_back(e);
  std::sort(report.exceptions.begin(), report.exceptions.end(),
            [](const ScanException& a, const ScanException& b) { return std::tie(a.p, a.n) < std::tie(b.p, b.n); });
  report.exceptions.erase(std::unique(report.exceptions.begin(), report.exceptions.end()), report.exceptions.end());

  std::uint64_t first = kind == ScanKind::good_prime ? std::max<std::uint64_t>(lo, 3) : lo;
  auto all = primes_in_range(std::min(first, hi), hi);
  report.checked_count = all.size();
  report.checkpoint = all.empty() ? 0 : all.back();
  return report;
}

}  // namespace

std::vector<ScanException> good_prime_exceptions(Prime p, int depth) {
  if (depth < 2) throw std::invalid_argument("scan depth must be at least 2");
  std::vector<ScanException> out;
  if (p < 3) return out;
  // f(n) = (n+1) 2^{-(n+1)} S(n+1) with S(m) = sum_{k<=m} 2^k / k, and n+1 < p
  // is a unit, so p^2 | f(n) iff p^2 | S(n+1). Track S = A/B mod p^2 in
  // Montgomery form; A R + t B R needs one reduction since both are < m^2.
  const Montgomery mont(p * p);
  const u64 one = mont.one();
  u64 a = 0, b = one, t = one, kk = 0;
  std::vector<std::uint64_t> hits;
  for (u64 k = 1; k + 1 <= p; ++k) {
    t = mont.add(t, t);
    kk = mont.add(kk, one);
    a = mont.reduce(static_cast<u128>(a) * kk + static_cast<u128>(t) * b);
    b = mont.reduce(static_cast<u128>(b) * kk);
    if (k >= 2 && a == 0) hits.push_back(k - 1);
  }
  for (auto n : hits) {
    std::int64_t nu = prefix_valuation(p, n + 1, depth);
    out.push_back({p, n, nu, nu > depth});
  }
  return out;
}

ScanReport scan_good_primes(std::uint64_t lo, std::uint64_t hi, const ScanOptions& opt) {
  if (opt.depth < 2) throw std::invalid_argument("scan depth must be at least 2");
  if (hi > (std::uint64_t{1} << 31)) throw std::invalid_argument("good-prime scan bound must stay below 2^31");
  return run_scan(ScanKind::good_prime, lo, hi, opt, 1 << 14, [&](Prime p, std::vector<ScanException>& rows) {
    if (p < 3) return;
    auto found = good_prime_exceptions(p, opt.depth);
    if (opt.oracle_check && p <= 200) oracle_check(p, opt.depth, found);
    rows.insert(rows.end(), found.begin(), found.end());
  });
}

ScanReport scan_wieferich(std::uint64_t lo, std::uint64_t hi, const ScanOptions& opt) {
  return run_scan(ScanKind::wieferich, lo, hi, opt, 1 << 20, [](Prime p, std::vector<ScanException>& rows) {
    if (is_wieferich(p)) rows.push_back({p, 0, 0, false});
  });
}

}  // namespace invbinom
