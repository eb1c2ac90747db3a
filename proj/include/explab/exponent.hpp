#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "explab/residue_set.hpp"

namespace explab {

struct ExponentResult {
  std::uint32_t modulus = 0;
  GeneratorSpec set;
  bool primitive = false;
  std::optional<std::uint32_t> exponent;  // engaged iff primitive
  // Number of sumset steps the evolving-set loop performed (0 when the set is
  // already full or not primitive). Kept for performance regression tracking.
  std::uint32_t iterations_used = 0;
};

struct DiameterResult {
  std::uint32_t modulus = 0;
  GeneratorSpec set;
  bool strongly_connected = false;
  std::optional<std::uint32_t> diameter;  // engaged iff strongly connected
};

struct QuotientBound {
  std::uint32_t divisor = 0;  // m | n
  std::uint32_t bound = 0;    // m + n/m - 2
  bool operator==(const QuotientBound&) const = default;
};

// Least e with e-fold sumset of S equal to Z_n; absent when not primitive.
ExponentResult exponent(const ResidueSet& s);

// Max distance from vertex 0 in Circ(n, S); the digraph is vertex transitive
// so this is the diameter. Absent when not strongly connected.
DiameterResult diameter(const ResidueSet& s);

// gcd(S union {n}) == 1, with no translation applied.
bool strongly_connected(const ResidueSet& s);

// For every divisor m of n such that S contains an element of additive order
// n/m, the diameter of Circ(n, S) is at most m + n/m - 2. Returns the list of
// (m, bound) pairs, ascending in m. Pre: strongly connected.
std::vector<QuotientBound> quotient_diameter_bounds(const ResidueSet& s);

namespace detail {

// Single-word fast path, n <= 64. Bit i of mask is element i.
std::uint64_t rotl_mask(std::uint64_t mask, std::uint32_t s, std::uint32_t n);

// pre: mask primitive and contains 0 (bit 0 set).
std::uint32_t exponent_mask(std::uint32_t n, std::uint64_t mask);

// gcd of all elements of mask together with n.
std::uint32_t gcd_mask(std::uint32_t n, std::uint64_t mask);

}  // namespace detail

}  // namespace explab
