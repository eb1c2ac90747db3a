#include "explab/enumerate.hpp"

#include <algorithm>
#include <atomic>
#include <numeric>
#include <thread>

#include "explab/canonical.hpp"
#include "explab/exponent.hpp"
#include "internal.hpp"

namespace explab {

namespace {

unsigned clamp_threads(unsigned threads) {
  return std::min(std::max(threads, 1u), 64u);
}

void check_modulus_arg(std::uint32_t n, const char* what) {
  if (n < 2 || n > kMaxModulus)
    throw std::invalid_argument(std::string(what) + ": modulus out of range");
}

std::uint64_t scale_mask(std::uint64_t mask,
                         const std::vector<std::uint8_t>& mult) {
  std::uint64_t out = 0;
  while (mask) {
    out |= std::uint64_t{1} << mult[std::countr_zero(mask)];
    mask &= mask - 1;
  }
  return out;
}

bool is_unit_min_mask(std::uint64_t mask,
                      const std::vector<std::vector<std::uint8_t>>& mults) {
  for (std::size_t row = 1; row < mults.size(); ++row)
    if (scale_mask(mask, mults[row]) < mask) return false;
  return true;
}

struct scan_part {
  internal::recorder rec;
  SearchCounters counters;

  explicit scan_part(std::uint32_t n) : rec(n) {}
};

void scan_mask_range(std::uint32_t n, std::uint64_t lo, std::uint64_t hi,
                     const detail::UnitTables& tables, scan_part& out) {
  for (std::uint64_t x = lo; x < hi; ++x) {
    const std::uint64_t mask = (x << 1) | 1;
    ++out.counters.exhaustive_candidates;
    if (detail::gcd_mask(n, mask) != 1) continue;
    if (!is_unit_min_mask(mask, tables.mults)) continue;
    ++out.counters.exponent_checks;
    const std::uint32_t e = detail::exponent_mask(n, mask);
    out.rec.offer(e, internal::mask_elements(mask), "exhaustive",
                  std::nullopt);
  }
}

std::vector<std::uint32_t> proper_divisors(std::uint32_t n) {
  std::vector<std::uint32_t> out;
  for (std::uint32_t d = 1; d < n; ++d)
    if (n % d == 0) out.push_back(d);
  return out;
}

}  // namespace

namespace internal {

ExponentSetResult finish_result(std::uint32_t n, bool exhaustive,
                                recorder&& rec, SearchCounters counters) {
  ExponentSetResult result;
  result.modulus = n;
  result.exhaustive = exhaustive;
  result.counters = counters;
  const std::uint64_t nw = (n + 63) / 64;
  for (auto& [e, ent] : rec.best) {
    GeneratorSpec spec(n, std::move(ent.elems));
    const std::uint64_t cost =
        static_cast<std::uint64_t>(e) * spec.elements.size() * nw;
    if (cost <= kReverifyOpsLimit) {
      const auto check = exponent(spec.to_set());
      if (!check.exponent || *check.exponent != e)
        throw std::logic_error("witness re-verification failed for exponent " +
                               std::to_string(e) + " mod " + std::to_string(n));
    }
    result.exponents.push_back(e);
    result.witnesses.emplace(
        e, WitnessRecord{n, e, std::move(spec), std::move(ent.method),
                         ent.seed});
  }
  return result;
}

}  // namespace internal

bool is_witness_method(std::string_view m) {
  return std::find(kWitnessMethods.begin(), kWitnessMethods.end(), m) !=
         kWitnessMethods.end();
}

bool ExponentSetResult::contains(std::uint32_t e) const {
  return std::binary_search(exponents.begin(), exponents.end(), e);
}

ExponentSetResult enumerate_exact(std::uint32_t n, unsigned threads,
                                  std::uint32_t cap) {
  check_modulus_arg(n, "enumerate_exact");
  const std::uint32_t effective_cap = std::min<std::uint32_t>(cap, 64);
  if (n > effective_cap)
    throw exhaustive_cap_error(
        "enumerate_exact: modulus " + std::to_string(n) +
        " exceeds the exhaustive cap of " + std::to_string(effective_cap));

  const detail::UnitTables tables(n);
  const std::uint64_t total = std::uint64_t{1} << (n - 1);
  const unsigned t = static_cast<unsigned>(
      std::min<std::uint64_t>(clamp_threads(threads), total));

  std::vector<scan_part> parts(t, scan_part(n));
  if (t == 1) {
    scan_mask_range(n, 0, total, tables, parts[0]);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(t);
    for (unsigned w = 0; w < t; ++w) {
      const std::uint64_t lo = total / t * w + std::min<std::uint64_t>(w, total % t);
      const std::uint64_t hi =
          total / t * (w + 1) + std::min<std::uint64_t>(w + 1, total % t);
      pool.emplace_back(scan_mask_range, n, lo, hi, std::cref(tables),
                        std::ref(parts[w]));
    }
    for (auto& th : pool) th.join();
  }

  internal::recorder rec(n);
  SearchCounters counters;
  for (auto& p : parts) {
    rec.merge(std::move(p.rec));
    counters.exhaustive_candidates += p.counters.exhaustive_candidates;
    counters.exponent_checks += p.counters.exponent_checks;
  }
  return internal::finish_result(n, true, std::move(rec), counters);
}

namespace {

// All supports {0, a, ...} with second element a, ascending tails, sizes up
// to max_size. gcd is threaded down the tree so primitivity is O(1) per node.
struct support_scan {
  std::uint32_t n;
  std::uint32_t max_size;
  const std::vector<std::uint32_t>& units;
  const detail::UnitTables* tables;  // word kernel when n <= 64
  internal::wide_exponent wide;
  internal::recorder rec;
  SearchCounters counters;
  std::vector<std::uint32_t> elems;

  support_scan(std::uint32_t n_, std::uint32_t max_size_,
               const std::vector<std::uint32_t>& units_,
               const detail::UnitTables* tables_)
      : n(n_), max_size(max_size_), units(units_), tables(tables_), wide(n_),
        rec(n_) {
    elems.reserve(max_size);
    elems.push_back(0);
  }

  void visit(std::uint32_t g) {
    ++counters.sweep_candidates;
    if (g == 1 && detail::is_unit_min_elements(n, elems, units)) {
      ++counters.exponent_checks;
      const std::uint32_t e = tables
          ? detail::exponent_mask(n, internal::elements_mask(elems))
          : wide.run(elems);
      rec.offer(e, elems, "sweep", std::nullopt);
    }
  }

  void extend(std::uint32_t g) {
    if (elems.size() >= max_size) return;
    for (std::uint32_t next = elems.back() + 1; next < n; ++next) {
      elems.push_back(next);
      const std::uint32_t gc = std::gcd(g, next);
      visit(gc);
      extend(gc);
      elems.pop_back();
    }
  }

  void run_second(std::uint32_t a) {
    elems.resize(1);
    elems.push_back(a);
    const std::uint32_t g = std::gcd(n, a);
    visit(g);
    extend(g);
  }
};

}  // namespace

ExponentSetResult enumerate_min_support(std::uint32_t n, std::uint32_t max_size,
                                        unsigned threads) {
  check_modulus_arg(n, "enumerate_min_support");
  if (max_size < 2)
    throw std::invalid_argument("enumerate_min_support: max_size must be >= 2");
  const std::uint32_t size_cap = std::min(max_size, n);

  const detail::UnitTables tables(n);
  const detail::UnitTables* word_tables = n <= 64 ? &tables : nullptr;
  const unsigned t =
      std::min<unsigned>(clamp_threads(threads), std::max(n - 1, 1u));

  std::vector<support_scan> parts;
  parts.reserve(t);
  for (unsigned w = 0; w < t; ++w)
    parts.emplace_back(n, size_cap, tables.units, word_tables);

  std::atomic<std::uint32_t> next_second{1};
  auto drain = [&](support_scan& part) {
    for (;;) {
      const std::uint32_t a = next_second.fetch_add(1);
      if (a >= n) break;
      part.run_second(a);
    }
  };

  if (t == 1) {
    drain(parts[0]);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(t);
    for (auto& part : parts) pool.emplace_back(drain, std::ref(part));
    for (auto& th : pool) th.join();
  }

  internal::recorder rec(n);
  SearchCounters counters;
  for (auto& p : parts) {
    rec.merge(std::move(p.rec));
    counters.sweep_candidates += p.counters.sweep_candidates;
    counters.exponent_checks += p.counters.exponent_checks;
  }
  return internal::finish_result(n, false, std::move(rec), counters);
}

namespace {

struct high_scan_part {
  internal::recorder rec;
  std::uint64_t nodes = 0;
  std::uint64_t checks = 0;

  explicit high_scan_part(std::uint32_t n) : rec(n) {}
};

// DFS over ascending extensions of mask. Prunes once a node is primitive
// with exponent below the threshold, since supersets only shrink exponents.
void high_scan_dfs(std::uint32_t n, std::uint32_t threshold,
                   const detail::UnitTables& tables, std::uint64_t mask,
                   std::uint32_t g, std::uint32_t last, high_scan_part& out) {
  ++out.nodes;
  if (g == 1) {
    ++out.checks;
    const std::uint32_t e = detail::exponent_mask(n, mask);
    if (e < threshold) return;
    out.rec.offer(e,
                  internal::mask_elements(
                      detail::canonical_mask(n, mask, tables.mults)),
                  "exhaustive", std::nullopt);
  }
  for (std::uint32_t next = last + 1; next < n; ++next)
    high_scan_dfs(n, threshold, tables, mask | (std::uint64_t{1} << next),
                  std::gcd(g, next), next, out);
}

}  // namespace

HighExponentScan exact_high_exponents(std::uint32_t n, std::uint32_t threshold,
                                      unsigned threads) {
  check_modulus_arg(n, "exact_high_exponents");
  if (n > 64)
    throw std::invalid_argument(
        "exact_high_exponents: modulus above the word kernel limit of 64");
  if (threshold < 1 || threshold > n - 1)
    throw std::invalid_argument(
        "exact_high_exponents: threshold must be in [1, n-1]");

  const detail::UnitTables tables(n);

  // Tasks are the subtrees rooted at {0, d, x}; the two-element prefixes are
  // handled inline. Any scaling orbit has a member whose least nonzero
  // element divides n, so restricting the second element to divisors keeps
  // the scan exact.
  struct task {
    std::uint64_t mask;
    std::uint32_t g, last;
  };
  std::vector<task> tasks;
  std::vector<high_scan_part> prefix_parts;
  prefix_parts.emplace_back(n);
  auto& prefix = prefix_parts.front();
  ++prefix.nodes;  // the root {0}
  for (const std::uint32_t d : proper_divisors(n)) {
    const std::uint64_t mask = 1 | (std::uint64_t{1} << d);
    ++prefix.nodes;
    if (d == 1) {  // primitive pair; every other divisor pair is not
      ++prefix.checks;
      const std::uint32_t e = detail::exponent_mask(n, mask);
      if (e < threshold) continue;
      prefix.rec.offer(e,
                       internal::mask_elements(
                           detail::canonical_mask(n, mask, tables.mults)),
                       "exhaustive", std::nullopt);
    }
    for (std::uint32_t x = d + 1; x < n; ++x)
      tasks.push_back({mask | (std::uint64_t{1} << x), std::gcd(d, x), x});
  }

  const unsigned t = static_cast<unsigned>(std::min<std::size_t>(
      clamp_threads(threads), std::max<std::size_t>(tasks.size(), 1)));
  std::vector<high_scan_part> parts(t, high_scan_part(n));
  std::atomic<std::size_t> next_task{0};
  auto drain = [&](high_scan_part& part) {
    for (;;) {
      const std::size_t i = next_task.fetch_add(1);
      if (i >= tasks.size()) break;
      high_scan_dfs(n, threshold, tables, tasks[i].mask, tasks[i].g,
                    tasks[i].last, part);
    }
  };
  if (t == 1) {
    drain(parts[0]);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(t);
    for (auto& part : parts) pool.emplace_back(drain, std::ref(part));
    for (auto& th : pool) th.join();
  }

  internal::recorder rec(n);
  std::uint64_t nodes = prefix.nodes;
  rec.merge(std::move(prefix.rec));
  for (auto& p : parts) {
    rec.merge(std::move(p.rec));
    nodes += p.nodes;
  }

  HighExponentScan scan;
  scan.modulus = n;
  scan.threshold = threshold;
  scan.nodes_visited = nodes;
  for (auto& [e, ent] : rec.best) {
    GeneratorSpec spec(n, std::move(ent.elems));
    const auto check = exponent(spec.to_set());
    if (!check.exponent || *check.exponent != e)
      throw std::logic_error("high-exponent witness re-verification failed");
    scan.exponents.push_back(e);
    scan.witnesses.emplace(e, WitnessRecord{n, e, std::move(spec),
                                            "exhaustive", std::nullopt});
  }
  for (std::uint32_t e = threshold; e < n; ++e)
    if (!std::binary_search(scan.exponents.begin(), scan.exponents.end(), e))
      scan.absent.push_back(e);
  return scan;
}

}  // namespace explab
