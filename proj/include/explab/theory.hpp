#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "explab/constructions.hpp"
#include "explab/enumerate.hpp"

namespace explab {

// Certified gap families, identified on the wire by fixed tags.
enum class GapTag { low, mid, upper };

// "thm9", "cor4-mid", "cor4-upper". These strings are part of the report
// format; do not rename.
std::string_view gap_tag_name(GapTag tag);
std::optional<GapTag> parse_gap_tag(std::string_view name);

struct GapInterval {
  std::uint32_t lo = 0;
  std::uint32_t hi = 0;
  GapTag tag = GapTag::low;

  bool operator==(const GapInterval&) const = default;
  bool contains(std::uint32_t e) const { return lo <= e && e <= hi; }
};

struct GapReport {
  std::uint32_t modulus = 0;
  std::vector<GapInterval> certified;  // ascending by lo, empties dropped
  std::vector<std::uint32_t> uncertified_absences;
  // True when the underlying exponent set was exhaustive, so the absences
  // are real rather than budget-limited.
  bool absences_definitive = false;
  bool consistent = true;
};

// q >= r for the division n = (k-1)q + r, 0 <= r < k-1. When true, k is a
// guaranteed member of E_n. Domain: 3 <= k <= n/3.
bool division_condition(std::uint32_t n, std::uint32_t k);

// Every integer in [1, isqrt(n)] appears in E.
bool sqrt_range_check(const ExponentSetResult& E);

// True iff {a*t + b mod n : a, b >= 0, a + b <= k} is all of Z_n.
// Equivalently, the diameter of the circulant on {0, 1, t} is at most k.
bool covers_all_residues(std::uint32_t n, std::uint32_t t, std::uint64_t k);

// For every t in [4, n/2) except {n/3, n/3+1}, checks that k = n/4 + 2 steps
// cover all residues, cross-checked against the BFS diameter of {0,1,t}.
// Domain: n >= 28.
bool verify_quarter_diameter_bound(std::uint32_t n);

// The certified gap intervals at modulus n, ascending, empties dropped:
// [n/4+3, n/3-2] (thm9), [n/3+2, n/2-2] (cor4-mid), [n/2+1, n-2]
// (cor4-upper). Domain: n >= 5.
std::vector<GapInterval> gap_intervals(std::uint32_t n);

// Exponent values provably in E_n: the closed-form construction values, the
// sqrt range and the division-condition values. Sorted ascending.
std::vector<std::uint32_t> guaranteed_members(std::uint32_t n);

// Classifies the absences of E against the certified intervals. Values that
// are guaranteed members are never reported absent; if E is exhaustive and
// misses a guaranteed member, the theory itself is broken and this throws.
GapReport verify_gaps(const ExponentSetResult& E);

enum class ScanStatus { witnessed, certified_absent, undecided };

std::string_view scan_status_name(ScanStatus s);

struct ScanEntry {
  std::uint32_t exponent = 0;
  ScanStatus status = ScanStatus::undecided;
  std::optional<WitnessRecord> witness;
};

struct ScanRow {
  std::uint32_t modulus = 0;
  std::uint32_t lo = 0, hi = 0;  // examined exponent window
  std::vector<ScanEntry> entries;
  std::uint64_t budget_spent = 0;
};

struct ScanReport {
  std::uint32_t k = 0;
  std::uint64_t budget = 0;
  std::uint64_t seed = 0;
  std::vector<ScanRow> rows;
};

// For each n in [n_lo, n_hi], examines the exponent window
// [n/(k+1) - 2, ceil(n/k) + 2] clipped to [1, n-1]: witnessed when the
// search finds a witness, certified-absent when a gap interval covers the
// value, undecided otherwise. Never asserts an uncertified absence. A
// witness inside a certified interval would disprove the certificates and
// throws.
ScanReport conjecture_scan(std::uint32_t k, std::uint32_t n_lo,
                           std::uint32_t n_hi, std::uint64_t budget,
                           std::uint64_t seed);

}  // namespace explab
