#pragma once

#include <cstdint>
#include <vector>

#include "explab/residue_set.hpp"

namespace explab {

struct CanonicalClass {
  std::uint32_t modulus = 0;
  GeneratorSpec representative;  // always contains 0
};

// Minimum of the orbit of S under the affine maps x -> u*x + c (u a unit),
// ordered by the membership vector read as an n-bit integer. The minimum of
// any orbit contains 0: translating a set so its least element becomes 0
// strictly shrinks the value, so representatives are normalized that way.
CanonicalClass canonicalize(const ResidueSet& s);

namespace detail {

// Units of Z_n in ascending order.
std::vector<std::uint32_t> units_mod(std::uint32_t n);

// Single-word orbit minimum, n <= 64. mults[i] maps element x to
// units[i]*x mod n; see UnitTables below.
std::uint64_t canonical_mask(std::uint32_t n, std::uint64_t mask,
                             const std::vector<std::vector<std::uint8_t>>& mults);

// Scaled-copy tables for the word kernels: one row per unit, mapping each
// element to its image. Row 0 is always the identity (u = 1).
struct UnitTables {
  std::vector<std::uint32_t> units;
  std::vector<std::vector<std::uint8_t>> mults;  // only built for n <= 64
  explicit UnitTables(std::uint32_t n);
};

// Orbit minimum on sorted element lists, any n. Returns ascending elements.
std::vector<std::uint32_t> canonical_elements(std::uint32_t n,
                                              const std::vector<std::uint32_t>& elems,
                                              const std::vector<std::uint32_t>& units);

// True iff elems (ascending, containing 0) is the minimum of its orbit under
// unit scaling alone. The exhaustive and sweep enumerations use this to visit
// one set per scaling orbit.
bool is_unit_min_elements(std::uint32_t n, const std::vector<std::uint32_t>& elems,
                          const std::vector<std::uint32_t>& units);

// Value order ("membership vector as integer") on ascending element lists.
bool elements_value_less(const std::vector<std::uint32_t>& a,
                         const std::vector<std::uint32_t>& b);

}  // namespace detail

}  // namespace explab
