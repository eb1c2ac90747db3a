#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "explab/residue_set.hpp"

namespace explab {

class WitnessCache;

inline constexpr std::uint32_t kDefaultExhaustiveCap = 30;
inline constexpr std::uint64_t kDefaultBudget = 1'000'000;
inline constexpr std::uint64_t kDefaultSeed = 1;
inline constexpr std::uint32_t kDefaultSweepSize = 4;

inline constexpr std::array<std::string_view, 5> kWitnessMethods = {
    "exhaustive", "construction", "lemma6", "sweep", "random"};

bool is_witness_method(std::string_view m);

struct WitnessRecord {
  std::uint32_t modulus = 0;
  std::uint32_t exponent = 0;
  GeneratorSpec witness;
  std::string method;
  std::optional<std::uint64_t> seed;

  bool operator==(const WitnessRecord&) const = default;
};

struct SearchCounters {
  std::uint64_t exhaustive_candidates = 0;
  std::uint64_t construction_candidates = 0;
  std::uint64_t sweep_candidates = 0;
  std::uint64_t random_trials = 0;
  std::uint64_t exponent_checks = 0;
};

struct ExponentSetResult {
  std::uint32_t modulus = 0;
  bool exhaustive = false;
  std::vector<std::uint32_t> exponents;  // ascending
  std::map<std::uint32_t, WitnessRecord> witnesses;
  SearchCounters counters;

  bool contains(std::uint32_t e) const;
};

// Requesting an exhaustive enumeration beyond the cap.
struct exhaustive_cap_error : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Exact E_n by scanning the subsets of Z_n that contain 0, visiting one set
// per unit-scaling orbit. Witnesses are the orbit-minimal achievers. The
// result is identical for any worker count. Throws exhaustive_cap_error when
// n exceeds cap.
ExponentSetResult enumerate_exact(std::uint32_t n, unsigned threads = 1,
                                  std::uint32_t cap = kDefaultExhaustiveCap);

// Exact restriction of E_n to witnesses of size <= max_size, same
// conventions as enumerate_exact but for any modulus.
ExponentSetResult enumerate_min_support(std::uint32_t n, std::uint32_t max_size,
                                        unsigned threads = 1);

// Union of deterministic constructions, a bounded-support sweep and seeded
// random sampling. Never claims exhaustiveness. Deterministic for a fixed
// seed regardless of worker count.
ExponentSetResult search_exponent_set(std::uint32_t n, std::uint64_t budget,
                                      std::uint64_t seed, unsigned threads = 1);

struct FindResult {
  std::optional<WitnessRecord> record;
  // True only when n was within the exhaustive cap and the full scan ran.
  bool definitive_absence = false;
};

// Witness for exponent e at modulus n: cache, then constructions, then the
// sweep, then random trials; falls back to the exhaustive scan when n <= cap,
// which makes a negative answer definitive.
FindResult find_witness(std::uint32_t n, std::uint32_t e, std::uint64_t budget,
                        std::uint64_t seed, const WitnessCache* cache = nullptr,
                        std::uint32_t cap = kDefaultExhaustiveCap,
                        unsigned threads = 1);

struct HighExponentScan {
  std::uint32_t modulus = 0;
  std::uint32_t threshold = 0;
  std::vector<std::uint32_t> exponents;  // exact E_n intersected with [threshold, n-1]
  std::map<std::uint32_t, WitnessRecord> witnesses;
  std::vector<std::uint32_t> absent;  // [threshold, n-1] minus exponents
  std::uint64_t nodes_visited = 0;
};

// Exact determination of E_n above a threshold without scanning all 2^(n-1)
// subsets: grow sets containing 0 in ascending element order and prune any
// branch whose prefix is primitive with exponent below the threshold, since
// supersets can only shrink the exponent. The second element is restricted
// to divisors of n, which covers every scaling orbit.
HighExponentScan exact_high_exponents(std::uint32_t n, std::uint32_t threshold,
                                      unsigned threads = 1);

}  // namespace explab
