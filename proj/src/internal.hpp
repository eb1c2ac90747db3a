// Helpers shared by the enumeration and search translation units.
// Not installed; include only from src/.
#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "explab/canonical.hpp"
#include "explab/enumerate.hpp"
#include "explab/residue_set.hpp"

namespace explab::internal {

// Ceiling on the word-operation estimate (exponent * |S| * words) for
// re-verifying a single witness by direct iteration. Witnesses above it are
// recorded as claimed; in practice only interval constructions near the
// modulus cap exceed this.
inline constexpr std::uint64_t kReverifyOpsLimit = 2'000'000'000;

inline std::vector<std::uint32_t> mask_elements(std::uint64_t mask) {
  std::vector<std::uint32_t> out;
  while (mask) {
    out.push_back(static_cast<std::uint32_t>(std::countr_zero(mask)));
    mask &= mask - 1;
  }
  return out;
}

inline std::uint64_t elements_mask(const std::vector<std::uint32_t>& elems) {
  std::uint64_t m = 0;
  for (auto e : elems) m |= std::uint64_t{1} << e;
  return m;
}

// Exponent of a generating set given as ascending elements containing 0,
// already known primitive. Scratch buffers are reused across calls so tight
// candidate loops do not allocate.
struct wide_exponent {
  std::uint32_t n = 0;
  std::vector<std::uint64_t> cur, next;

  explicit wide_exponent(std::uint32_t modulus) : n(modulus) {
    const std::size_t nw = (n + 63) / 64;
    cur.resize(nw);
    next.resize(nw);
  }

  std::uint32_t run(const std::vector<std::uint32_t>& elems) {
    std::fill(cur.begin(), cur.end(), 0);
    for (auto e : elems) cur[e >> 6] |= std::uint64_t{1} << (e & 63);
    std::uint32_t e = 1;
    while (!detail::words_full(cur.data(), n)) {
      std::copy(cur.begin(), cur.end(), next.begin());
      for (auto g : elems)
        if (g) detail::or_rotated_words(next.data(), cur.data(), n, g);
      cur.swap(next);
      if (++e > n)
        throw std::logic_error("exponent iteration exceeded modulus");
    }
    return e;
  }
};

// Keeps, per exponent, the smallest witness seen so far in membership-vector
// order. Merging two recorders is order-independent, so chunked parallel
// runs produce identical results for any worker count. Ties keep the earlier
// entry; within one phase method and seed are uniform, so that is harmless.
struct recorder {
  struct entry {
    std::vector<std::uint32_t> elems;
    std::string method;
    std::optional<std::uint64_t> seed;
  };

  std::uint32_t n;
  std::map<std::uint32_t, entry> best;

  explicit recorder(std::uint32_t modulus) : n(modulus) {}

  void offer(std::uint32_t e, std::vector<std::uint32_t> elems,
             std::string method, std::optional<std::uint64_t> seed) {
    auto it = best.find(e);
    if (it == best.end())
      best.emplace(e, entry{std::move(elems), std::move(method), seed});
    else if (detail::elements_value_less(elems, it->second.elems))
      it->second = entry{std::move(elems), std::move(method), seed};
  }

  void merge(recorder&& other) {
    for (auto& [e, ent] : other.best)
      offer(e, std::move(ent.elems), std::move(ent.method), ent.seed);
  }
};

// Turns a recorder into the public result type, re-verifying every witness.
ExponentSetResult finish_result(std::uint32_t n, bool exhaustive,
                                recorder&& rec, SearchCounters counters);

}  // namespace explab::internal
