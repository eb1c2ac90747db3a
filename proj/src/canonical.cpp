#include "explab/canonical.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <stdexcept>

#include "explab/exponent.hpp"

namespace explab {
namespace detail {

std::vector<std::uint32_t> units_mod(std::uint32_t n) {
  std::vector<std::uint32_t> units;
  for (std::uint32_t u = 1; u < n; ++u)
    if (std::gcd(u, n) == 1) units.push_back(u);
  return units;
}

UnitTables::UnitTables(std::uint32_t n) : units(units_mod(n)) {
  if (n > 64) return;
  mults.reserve(units.size());
  for (auto u : units) {
    std::vector<std::uint8_t> row(n);
    for (std::uint32_t x = 0; x < n; ++x)
      row[x] = static_cast<std::uint8_t>(static_cast<std::uint64_t>(u) * x % n);
    mults.push_back(std::move(row));
  }
}

std::uint64_t canonical_mask(std::uint32_t n, std::uint64_t mask,
                             const std::vector<std::vector<std::uint8_t>>& mults) {
  std::uint64_t best = ~std::uint64_t{0};
  for (const auto& row : mults) {
    std::uint64_t scaled = 0;
    std::uint64_t bits = mask;
    while (bits) {
      scaled |= std::uint64_t{1} << row[std::countr_zero(bits)];
      bits &= bits - 1;
    }
    std::uint64_t pivots = scaled;
    while (pivots) {
      const std::uint32_t t = static_cast<std::uint32_t>(std::countr_zero(pivots));
      const std::uint64_t cand = t ? rotl_mask(scaled, n - t, n) : scaled;
      if (cand < best) best = cand;
      pivots &= pivots - 1;
    }
  }
  return best;
}

bool elements_value_less(const std::vector<std::uint32_t>& a,
                         const std::vector<std::uint32_t>& b) {
  // Compare the descending element lists lexicographically; this matches the
  // order of the membership vectors read as integers.
  std::size_t ia = a.size(), ib = b.size();
  while (ia > 0 && ib > 0) {
    const std::uint32_t xa = a[ia - 1], xb = b[ib - 1];
    if (xa != xb) return xa < xb;
    --ia, --ib;
  }
  return ia == 0 && ib > 0;
}

namespace {

// Ascending elements of (S - pivot) mod n given ascending elems of S; the
// tail [i..) drops by the pivot, the head wraps up by n - pivot.
std::vector<std::uint32_t> translated_to_zero(const std::vector<std::uint32_t>& elems,
                                              std::size_t i, std::uint32_t n) {
  std::vector<std::uint32_t> out;
  out.reserve(elems.size());
  const std::uint32_t p = elems[i];
  for (std::size_t j = i; j < elems.size(); ++j) out.push_back(elems[j] - p);
  for (std::size_t j = 0; j < i; ++j) out.push_back(elems[j] + n - p);
  return out;
}

}  // namespace

std::vector<std::uint32_t> canonical_elements(std::uint32_t n,
                                              const std::vector<std::uint32_t>& elems,
                                              const std::vector<std::uint32_t>& units) {
  const std::size_t m = elems.size();
  std::vector<std::uint32_t> best;
  std::vector<std::uint32_t> scaled(m);
  for (auto u : units) {
    for (std::size_t j = 0; j < m; ++j)
      scaled[j] = static_cast<std::uint32_t>(
          static_cast<std::uint64_t>(u) * elems[j] % n);
    std::sort(scaled.begin(), scaled.end());
    for (std::size_t i = 0; i < m; ++i) {
      // Largest element after pivoting at i is n minus the cyclic gap that
      // precedes scaled[i]; skip pivots that cannot beat the current best.
      const std::uint32_t prev = i ? scaled[i - 1] : scaled[m - 1];
      const std::uint32_t gap = i ? scaled[i] - prev : scaled[0] + n - prev;
      const std::uint32_t max_elem = (m == 1) ? 0 : n - gap;
      if (!best.empty() && max_elem > best.back()) continue;
      auto cand = translated_to_zero(scaled, i, n);
      if (best.empty() || elements_value_less(cand, best)) best = std::move(cand);
    }
  }
  return best;
}

bool is_unit_min_elements(std::uint32_t n, const std::vector<std::uint32_t>& elems,
                          const std::vector<std::uint32_t>& units) {
  const std::size_t m = elems.size();
  std::vector<std::uint32_t> scaled(m);
  for (auto u : units) {
    if (u == 1) continue;
    for (std::size_t j = 0; j < m; ++j)
      scaled[j] = static_cast<std::uint32_t>(
          static_cast<std::uint64_t>(u) * elems[j] % n);
    std::sort(scaled.begin(), scaled.end());
    if (elements_value_less(scaled, elems)) return false;
  }
  return true;
}

}  // namespace detail

CanonicalClass canonicalize(const ResidueSet& s) {
  if (s.empty()) throw std::invalid_argument("canonicalize: empty set");
  const std::uint32_t n = s.modulus();
  CanonicalClass out;
  out.modulus = n;
  if (n <= 64) {
    detail::UnitTables tables(n);
    const std::uint64_t best =
        detail::canonical_mask(n, s.words()[0], tables.mults);
    ResidueSet rep(n);
    std::uint64_t bits = best;
    while (bits) {
      rep.insert(static_cast<std::uint32_t>(std::countr_zero(bits)));
      bits &= bits - 1;
    }
    out.representative = GeneratorSpec::from_set(rep);
    return out;
  }
  const auto units = detail::units_mod(n);
  auto best = detail::canonical_elements(n, s.elements(), units);
  out.representative = GeneratorSpec(n, std::move(best));
  return out;
}

}  // namespace explab
