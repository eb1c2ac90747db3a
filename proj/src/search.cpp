#include <algorithm>
#include <numeric>
#include <thread>

#include "explab/canonical.hpp"
#include "explab/constructions.hpp"
#include "explab/enumerate.hpp"
#include "explab/exponent.hpp"
#include "explab/witness_cache.hpp"
#include "explab/detail/rng.hpp"
#include "internal.hpp"

namespace explab {

namespace {

// Random samples are canonicalized per sample up to this modulus; above it
// the unit group is large enough that per-sample orbit minimization would
// dominate the search, so raw sorted samples are recorded instead.
constexpr std::uint32_t kCanonicalSampleLimit = 256;

// Work estimate ceiling for the support sweep inside a search; the sweep
// size shrinks below the default until the estimate fits.
constexpr std::uint64_t kSweepOpsLimit = 400'000'000;

std::uint64_t binomial_capped(std::uint64_t n, std::uint64_t k,
                              std::uint64_t cap) {
  if (k > n) return 0;
  std::uint64_t r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    if (r > cap) return cap + 1;
    r = r * (n - k + i) / i;
  }
  return std::min(r, cap + 1);
}

std::uint32_t adaptive_sweep_size(std::uint32_t n, std::uint32_t nominal) {
  const auto phi =
      static_cast<std::uint64_t>(detail::units_mod(n).size());
  std::uint32_t s = std::min(nominal, n);
  while (s > 2) {
    const std::uint64_t cands =
        binomial_capped(n - 1, s - 1, kSweepOpsLimit);
    if (cands <= kSweepOpsLimit / std::max<std::uint64_t>(phi * s, 1))
      break;
    --s;
  }
  return std::max<std::uint32_t>(s, 2);
}

void run_constructions(std::uint32_t n, internal::recorder& rec,
                       SearchCounters& counters,
                       const std::vector<std::uint32_t>& units) {
  for (const auto& c : known_constructions(n)) {
    ++counters.construction_candidates;
    const std::uint64_t nw = (n + 63) / 64;
    const std::uint64_t cost = static_cast<std::uint64_t>(c.exponent) *
                               c.set.elements.size() * nw;
    std::uint32_t e = c.exponent;
    if (cost <= internal::kReverifyOpsLimit) {
      ++counters.exponent_checks;
      const auto res = exponent(c.set.to_set());
      if (!res.exponent || *res.exponent != c.exponent)
        throw std::logic_error("construction family \"" + c.family +
                               "\" has a wrong closed form at n=" +
                               std::to_string(n));
      e = *res.exponent;
    }
    // Intervals {0..m} are their own orbit minimum (they have the smallest
    // membership value of any set of their size); the other families are
    // small enough to canonicalize outright.
    if (c.family == "interval")
      rec.offer(e, c.set.elements, "construction", std::nullopt);
    else
      rec.offer(e, detail::canonical_elements(n, c.set.elements, units),
                "construction", std::nullopt);
  }
}

void merge_sweep(std::uint32_t n, std::uint32_t size, unsigned threads,
                 internal::recorder& rec, SearchCounters& counters) {
  auto sw = enumerate_min_support(n, size, threads);
  counters.sweep_candidates += sw.counters.sweep_candidates;
  counters.exponent_checks += sw.counters.exponent_checks;
  for (auto& [e, w] : sw.witnesses)
    rec.offer(e, std::move(w.witness.elements), "sweep", std::nullopt);
}

// Deterministic scan of the sets {0..j} u {m}. These interpolate between
// consecutive interval exponents and reach the middle values the interval
// family skips, where random sampling is close to hopeless. A superset of
// {0..j} can never beat the interval exponent, which both prunes the scan
// and bounds the cost of each evaluation.
void run_interval_point(std::uint32_t n, std::uint32_t e,
                        internal::recorder& rec, SearchCounters& counters,
                        const std::vector<std::uint32_t>& units) {
  const std::uint64_t nw = (n + 63) / 64;
  internal::wide_exponent eval(n);
  std::uint64_t ops = 0;
  for (std::uint32_t j = 1; j + 2 <= std::min(n, 12u); ++j) {
    const std::uint64_t bound = (n - 2) / j + 1;
    if (bound < e) break;
    std::vector<std::uint32_t> els(j + 2);
    std::iota(els.begin(), els.end() - 1, 0);
    const std::uint64_t cost = bound * (j + 2) * nw;
    for (std::uint32_t m = j + 2; m < n; ++m) {
      if ((ops += cost) > kSweepOpsLimit) return;
      els.back() = m;
      ++counters.construction_candidates;
      ++counters.exponent_checks;
      if (eval.run(els) != e) continue;
      rec.offer(e, detail::canonical_elements(n, els, units), "construction",
                std::nullopt);
      return;
    }
  }
}

struct random_part {
  internal::recorder rec;
  SearchCounters counters;

  explicit random_part(std::uint32_t n) : rec(n) {}
};

// Samples with indices [lo, hi). Sample i is fully determined by (seed, i),
// so any partition of the index range yields the same merged result.
void run_random_range(std::uint32_t n, std::uint64_t seed, std::uint64_t lo,
                      std::uint64_t hi, std::uint32_t size_lo,
                      std::uint32_t size_hi,
                      const std::vector<std::uint32_t>& units,
                      random_part& out) {
  const detail::UnitTables* word = nullptr;
  std::optional<detail::UnitTables> tables;
  if (n <= 64) {
    tables.emplace(n);
    word = &*tables;
  }
  internal::wide_exponent wide(n);
  std::vector<std::uint32_t> elems;
  for (std::uint64_t i = lo; i < hi; ++i) {
    ++out.counters.random_trials;
    detail::SplitMix64 g(detail::stream_seed(seed, i));
    const std::uint32_t size =
        size_lo +
        static_cast<std::uint32_t>(g.below(size_hi - size_lo + 1));
    elems.assign(1, 0);
    while (elems.size() < size) {
      const auto v = 1 + static_cast<std::uint32_t>(g.below(n - 1));
      if (std::find(elems.begin(), elems.end(), v) == elems.end())
        elems.push_back(v);
    }
    std::sort(elems.begin(), elems.end());
    std::uint32_t gcd_all = n;
    for (const auto v : elems) gcd_all = std::gcd(gcd_all, v);
    if (gcd_all != 1) continue;
    ++out.counters.exponent_checks;
    const std::uint32_t e =
        word ? detail::exponent_mask(n, internal::elements_mask(elems))
             : wide.run(elems);
    if (n <= kCanonicalSampleLimit)
      out.rec.offer(e, detail::canonical_elements(n, elems, units), "random",
                    seed);
    else
      out.rec.offer(e, elems, "random", seed);
  }
}

void run_random(std::uint32_t n, std::uint64_t seed, std::uint64_t lo,
                std::uint64_t hi, std::uint32_t size_lo, std::uint32_t size_hi,
                unsigned threads, internal::recorder& rec,
                SearchCounters& counters,
                const std::vector<std::uint32_t>& units) {
  if (hi <= lo || size_lo > size_hi) return;
  const auto span = hi - lo;
  const unsigned t = static_cast<unsigned>(std::min<std::uint64_t>(
      std::min(std::max(threads, 1u), 64u), span));
  std::vector<random_part> parts(t, random_part(n));
  if (t == 1) {
    run_random_range(n, seed, lo, hi, size_lo, size_hi, units, parts[0]);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(t);
    for (unsigned w = 0; w < t; ++w) {
      const std::uint64_t a = lo + span / t * w + std::min<std::uint64_t>(w, span % t);
      const std::uint64_t b =
          lo + span / t * (w + 1) + std::min<std::uint64_t>(w + 1, span % t);
      pool.emplace_back(run_random_range, n, seed, a, b, size_lo, size_hi,
                        std::cref(units), std::ref(parts[w]));
    }
    for (auto& th : pool) th.join();
  }
  for (auto& p : parts) {
    rec.merge(std::move(p.rec));
    counters.random_trials += p.counters.random_trials;
    counters.exponent_checks += p.counters.exponent_checks;
  }
}

}  // namespace

ExponentSetResult search_exponent_set(std::uint32_t n, std::uint64_t budget,
                                      std::uint64_t seed, unsigned threads) {
  if (n < 2 || n > kMaxModulus)
    throw std::invalid_argument("search_exponent_set: modulus out of range");

  const auto units = detail::units_mod(n);
  internal::recorder rec(n);
  SearchCounters counters;
  run_constructions(n, rec, counters, units);
  merge_sweep(n, adaptive_sweep_size(n, kDefaultSweepSize), threads, rec,
              counters);
  run_random(n, seed, 0, budget, 2, std::min(n, 12u), threads, rec, counters,
             units);
  return internal::finish_result(n, false, std::move(rec), counters);
}

FindResult find_witness(std::uint32_t n, std::uint32_t e, std::uint64_t budget,
                        std::uint64_t seed, const WitnessCache* cache,
                        std::uint32_t cap, unsigned threads) {
  if (n < 2 || n > kMaxModulus)
    throw std::invalid_argument("find_witness: modulus out of range");
  if (e < 1 || e >= n)
    throw std::invalid_argument("find_witness: exponent must be in [1, n-1]");

  if (cache)
    if (const auto* rec = cache->find(n, e)) return {*rec, false};

  const auto units = detail::units_mod(n);
  internal::recorder rec(n);
  SearchCounters counters;

  const auto take = [&]() -> std::optional<WitnessRecord> {
    const auto it = rec.best.find(e);
    if (it == rec.best.end()) return std::nullopt;
    auto done =
        internal::finish_result(n, false, std::move(rec), counters);
    return std::move(done.witnesses.at(e));
  };

  // A set with exponent e has at most n-e+1 elements (each fold grows the
  // sumset by at least one residue while not yet full) and enough elements
  // that the e-fold sums can reach everything: s of them give at most
  // C(e+s-1, s-1) distinct sums.
  std::uint32_t size_lo = 2;
  while (binomial_capped(e + size_lo - 1, size_lo - 1, n) < n) ++size_lo;
  const std::uint32_t size_hi = std::min({n, 12u, n - e + 1});

  run_constructions(n, rec, counters, units);
  if (auto w = take()) return {std::move(w), false};
  const std::uint32_t sweep = adaptive_sweep_size(n, kDefaultSweepSize);
  if (size_lo <= sweep) {
    merge_sweep(n, sweep, threads, rec, counters);
    if (auto w = take()) return {std::move(w), false};
  }

  if (n <= std::min<std::uint32_t>(cap, 64)) {
    // Exhaustive settles membership definitively; random sampling would
    // spend the whole budget to still say "maybe".
    auto all = enumerate_exact(n, threads, cap);
    if (all.contains(e)) return {all.witnesses.at(e), false};
    return {std::nullopt, true};
  }

  run_interval_point(n, e, rec, counters, units);
  if (auto w = take()) return {std::move(w), false};

  constexpr std::uint64_t kBatch = 8192;
  for (std::uint64_t done = 0; done < budget && size_lo <= size_hi;) {
    const std::uint64_t next = std::min(budget, done + kBatch);
    run_random(n, seed, done, next, size_lo, size_hi, threads, rec, counters,
               units);
    done = next;
    if (auto w = take()) return {std::move(w), false};
  }
  return {std::nullopt, false};
}

}  // namespace explab
