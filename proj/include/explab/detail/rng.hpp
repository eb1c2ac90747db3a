#pragma once

#include <cstdint>

namespace explab::detail {

// splitmix64. Small, seedable at any stream position, identical output on
// every platform; that last property is what keeps seeded searches
// reproducible across toolchains.
struct SplitMix64 {
  std::uint64_t state;

  explicit SplitMix64(std::uint64_t seed) : state(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  // Uniform in [0, bound) via 128-bit multiply; the bias at these bounds is
  // far below anything a search could notice.
  std::uint64_t below(std::uint64_t bound) {
    return static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>(next()) * bound) >> 64);
  }
};

// Stream seed for the i-th sample of a run; decouples samples so work can be
// partitioned arbitrarily without changing results.
inline std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t index) {
  SplitMix64 g(seed ^ (0xD1B54A32D192ED03ull * (index + 1)));
  return g.next();
}

}  // namespace explab::detail
