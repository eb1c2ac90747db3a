#include "explab/exponent.hpp"

#include <bit>
#include <numeric>
#include <stdexcept>

namespace explab {

namespace detail {

std::uint64_t rotl_mask(std::uint64_t mask, std::uint32_t s, std::uint32_t n) {
  if (s == 0) return mask;
  const std::uint64_t low = (mask << s);
  const std::uint64_t wrap = mask >> (n - s);
  const std::uint64_t full =
      n == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;
  return (low | wrap) & full;
}

std::uint32_t gcd_mask(std::uint32_t n, std::uint64_t mask) {
  std::uint32_t g = n;
  while (mask) {
    g = std::gcd(g, static_cast<std::uint32_t>(std::countr_zero(mask)));
    if (g == 1) return 1;
    mask &= mask - 1;
  }
  return g;
}

std::uint32_t exponent_mask(std::uint32_t n, std::uint64_t mask) {
  const std::uint64_t full =
      n == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;
  std::uint64_t cur = mask;
  std::uint32_t e = 1;
  while (cur != full) {
    std::uint64_t next = cur;
    std::uint64_t gens = mask & (mask - 1);  // drop bit 0, a no-op shift
    while (gens) {
      const std::uint32_t s = static_cast<std::uint32_t>(std::countr_zero(gens));
      next |= rotl_mask(cur, s, n);
      gens &= gens - 1;
    }
    if (++e > n) throw std::logic_error("exponent_mask: failed to converge");
    cur = next;
  }
  return e;
}

}  // namespace detail

ExponentResult exponent(const ResidueSet& s) {
  ExponentResult res;
  res.modulus = s.modulus();
  res.set = GeneratorSpec::from_set(s);
  res.primitive = is_primitive(s);
  if (!res.primitive) return res;

  const std::uint32_t n = s.modulus();
  if (n <= 64) {
    std::uint64_t mask = s.words()[0];
    // The word kernel wants 0 in the set; primitivity is translation
    // invariant, and so is the exponent, so shift the least element to 0.
    const std::uint32_t m = s.min_element();
    if (m) mask = detail::rotl_mask(mask, n - m, n);
    const std::uint32_t e = detail::exponent_mask(n, mask);
    res.exponent = e;
    res.iterations_used = e - 1;
    return res;
  }

  const std::uint32_t m = s.min_element();
  const ResidueSet base = m ? translate(s, n - m) : s;
  const auto elems = base.elements();
  ResidueSet cur = base;
  std::uint32_t e = 1;
  while (!cur.is_full()) {
    ResidueSet next = cur;
    for (auto g : elems)
      if (g) ResidueSet::or_rotated(next, cur, g);
    if (++e > n) throw std::logic_error("exponent: failed to converge");
    cur = std::move(next);
  }
  res.exponent = e;
  res.iterations_used = e - 1;
  return res;
}

bool strongly_connected(const ResidueSet& s) {
  if (s.empty()) throw std::invalid_argument("strongly_connected: empty set");
  std::uint32_t g = s.modulus();
  for (auto e : s.elements()) {
    g = std::gcd(g, e);
    if (g == 1) return true;
  }
  return g == 1;
}

DiameterResult diameter(const ResidueSet& s) {
  DiameterResult res;
  res.modulus = s.modulus();
  res.set = GeneratorSpec::from_set(s);
  res.strongly_connected = strongly_connected(s);
  if (!res.strongly_connected) return res;

  // Level-synchronized BFS from vertex 0 on bitsets: the next frontier is the
  // union of rotated copies of the current one, minus everything seen.
  const std::uint32_t n = s.modulus();
  const auto elems = s.elements();
  ResidueSet visited(n);
  visited.insert(0);
  ResidueSet frontier = visited;
  std::uint32_t depth = 0;
  while (!visited.is_full()) {
    ResidueSet next(n);
    for (auto g : elems) ResidueSet::or_rotated(next, frontier, g);
    next.in_place_subtract(visited);
    if (next.empty())
      throw std::logic_error("diameter: BFS stalled on a connected digraph");
    visited.in_place_union(next);
    frontier = std::move(next);
    ++depth;
  }
  res.diameter = depth;
  return res;
}

std::vector<QuotientBound> quotient_diameter_bounds(const ResidueSet& s) {
  if (!strongly_connected(s))
    throw std::invalid_argument(
        "quotient_diameter_bounds: set is not strongly connected");
  const std::uint32_t n = s.modulus();
  std::vector<bool> gcd_present(n + 1, false);
  for (auto e : s.elements()) gcd_present[std::gcd(n, e)] = true;
  std::vector<QuotientBound> out;
  for (std::uint32_t m = 1; m <= n; ++m) {
    if (n % m != 0) continue;
    // An element of order n/m is one whose gcd with n is exactly m.
    if (gcd_present[m]) out.push_back({m, m + n / m - 2});
  }
  return out;
}

}  // namespace explab
