#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "explab/residue_set.hpp"

namespace explab {

// A generating set whose exponent is known in closed form.
struct Construction {
  GeneratorSpec set;
  std::uint32_t exponent;
  std::string family;
};

// Closed-form families at modulus n:
//   - intervals {0..m} with exponent ceil((n-1)/m), for 1 <= m <= n-1;
//   - {0,1,3} with exponent floor(n/3)+1, for n >= 4;
//   - {0,1,n/2,n/2+1} with exponent n/2-1, for even n >= 4.
// Above modulus 4096 the interval list is thinned to m <= 64 plus the values
// ceil((n-1)/j) for j <= 64, which still covers both ends of the exponent
// range at bounded cost.
std::vector<Construction> known_constructions(std::uint32_t n);

}  // namespace explab
