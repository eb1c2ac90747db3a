#include "explab/constructions.hpp"

#include <numeric>
#include <set>

namespace explab {

namespace {

constexpr std::uint32_t kDenseIntervalLimit = 4096;

Construction interval(std::uint32_t n, std::uint32_t m) {
  std::vector<std::uint32_t> elems(m + 1);
  std::iota(elems.begin(), elems.end(), 0u);
  const std::uint32_t e = (n - 2) / m + 1;  // ceil((n-1)/m)
  return {GeneratorSpec(n, std::move(elems)), e, "interval"};
}

}  // namespace

std::vector<Construction> known_constructions(std::uint32_t n) {
  if (n < 2 || n > kMaxModulus)
    throw std::invalid_argument("known_constructions: modulus out of range");

  std::vector<Construction> out;
  if (n <= kDenseIntervalLimit) {
    for (std::uint32_t m = 1; m < n; ++m) out.push_back(interval(n, m));
  } else {
    std::set<std::uint32_t> ms;
    for (std::uint32_t j = 1; j <= 64; ++j) {
      ms.insert(j);
      ms.insert((n - 2) / j + 1);
    }
    for (const std::uint32_t m : ms) out.push_back(interval(n, m));
  }
  if (n >= 4) {
    out.push_back(
        {GeneratorSpec(n, {0, 1, 3}), n / 3 + 1, "near-interval"});
    if (n % 2 == 0)
      out.push_back({GeneratorSpec(n, {0, 1, n / 2, n / 2 + 1}), n / 2 - 1,
                     "antipodal-pairs"});
  }
  return out;
}

}  // namespace explab
