#include "explab/theory.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>
#include <string>

#include "explab/exponent.hpp"

namespace explab {

namespace {

void check_modulus_arg(std::uint32_t n, const char* what) {
  if (n < 2 || n > kMaxModulus)
    throw std::invalid_argument(std::string(what) + ": modulus out of range");
}

std::uint32_t isqrt(std::uint32_t n) {
  std::uint32_t s = 0;
  while ((s + 1) * std::uint64_t{s + 1} <= n) ++s;
  return s;
}

}  // namespace

std::string_view gap_tag_name(GapTag tag) {
  switch (tag) {
    case GapTag::low: return "thm9";
    case GapTag::mid: return "cor4-mid";
    case GapTag::upper: return "cor4-upper";
  }
  throw std::logic_error("unknown gap tag");
}

std::optional<GapTag> parse_gap_tag(std::string_view name) {
  for (GapTag t : {GapTag::low, GapTag::mid, GapTag::upper})
    if (gap_tag_name(t) == name) return t;
  return std::nullopt;
}

bool division_condition(std::uint32_t n, std::uint32_t k) {
  check_modulus_arg(n, "division_condition");
  if (k < 3 || k > n / 3)
    throw std::invalid_argument("division_condition: k must be in [3, n/3]");
  const std::uint32_t q = n / (k - 1);
  const std::uint32_t r = n % (k - 1);
  return q >= r;
}

bool sqrt_range_check(const ExponentSetResult& E) {
  const std::uint32_t s = isqrt(E.modulus);
  for (std::uint32_t e = 1; e <= s; ++e)
    if (!E.contains(e)) return false;
  return true;
}

bool covers_all_residues(std::uint32_t n, std::uint32_t t, std::uint64_t k) {
  check_modulus_arg(n, "covers_all_residues");
  if (t < 1 || t >= n)
    throw std::invalid_argument("covers_all_residues: t must be in [1, n-1]");
  if (k >= n - 1) return true;  // b alone reaches every residue
  const auto kk = static_cast<std::uint32_t>(k);
  // Fixing a, the reachable residues form the cyclic interval of length
  // k-a+1 starting at a*t. Mark intervals with a difference array.
  std::vector<std::int32_t> diff(n + 1, 0);
  for (std::uint32_t a = 0; a <= kk; ++a) {
    const std::uint32_t len = kk - a + 1;  // < n here
    const auto s =
        static_cast<std::uint32_t>(static_cast<std::uint64_t>(a) * t % n);
    const std::uint32_t end = s + len;
    ++diff[s];
    if (end <= n) {
      --diff[end];
    } else {
      --diff[n];
      ++diff[0];
      --diff[end - n];
    }
  }
  std::int32_t run = 0;
  for (std::uint32_t x = 0; x < n; ++x) {
    run += diff[x];
    if (run <= 0) return false;
  }
  return true;
}

bool verify_quarter_diameter_bound(std::uint32_t n) {
  if (n < 28)
    throw std::invalid_argument(
        "verify_quarter_diameter_bound: modulus must be >= 28");
  check_modulus_arg(n, "verify_quarter_diameter_bound");
  const std::uint32_t k = n / 4 + 2;
  const std::uint32_t third = n / 3;
  for (std::uint32_t t = 4; t < n / 2; ++t) {
    if (t == third || t == third + 1) continue;
    if (!covers_all_residues(n, t, k)) return false;
    ResidueSet s(n);
    s.insert(0);
    s.insert(1);
    s.insert(t);
    const auto d = diameter(s);
    if (!d.diameter || *d.diameter > k) return false;
  }
  return true;
}

std::vector<GapInterval> gap_intervals(std::uint32_t n) {
  if (n < 5)
    throw std::invalid_argument("gap_intervals: modulus must be >= 5");
  check_modulus_arg(n, "gap_intervals");
  const auto m = static_cast<std::int64_t>(n);
  const std::int64_t raw[3][2] = {
      {m / 4 + 3, m / 3 - 2},   // low
      {m / 3 + 2, m / 2 - 2},   // mid
      {m / 2 + 1, m - 2},       // upper
  };
  const GapTag tags[3] = {GapTag::low, GapTag::mid, GapTag::upper};
  std::vector<GapInterval> out;
  for (int i = 0; i < 3; ++i) {
    if (raw[i][0] > raw[i][1]) continue;
    out.push_back({static_cast<std::uint32_t>(raw[i][0]),
                   static_cast<std::uint32_t>(raw[i][1]), tags[i]});
  }
  std::sort(out.begin(), out.end(),
            [](const GapInterval& a, const GapInterval& b) {
              return a.lo < b.lo;
            });
  return out;
}

std::vector<std::uint32_t> guaranteed_members(std::uint32_t n) {
  check_modulus_arg(n, "guaranteed_members");
  std::set<std::uint32_t> vals;
  for (const auto& c : known_constructions(n)) vals.insert(c.exponent);
  for (std::uint32_t e = 1; e <= isqrt(n); ++e) vals.insert(e);
  for (std::uint32_t k = 3; k <= n / 3; ++k)
    if (division_condition(n, k)) vals.insert(k);
  return {vals.begin(), vals.end()};
}

GapReport verify_gaps(const ExponentSetResult& E) {
  const std::uint32_t n = E.modulus;
  check_modulus_arg(n, "verify_gaps");
  GapReport rep;
  rep.modulus = n;
  if (n >= 5) rep.certified = gap_intervals(n);
  rep.absences_definitive = E.exhaustive;

  for (const auto e : E.exponents)
    for (const auto& iv : rep.certified)
      if (iv.contains(e)) rep.consistent = false;

  const auto guaranteed = guaranteed_members(n);
  if (E.exhaustive)
    for (const auto g : guaranteed)
      if (!E.contains(g))
        throw std::logic_error(
            "guaranteed member " + std::to_string(g) +
            " missing from exhaustive enumeration mod " + std::to_string(n));

  for (std::uint32_t e = 1; e < n; ++e) {
    if (E.contains(e)) continue;
    const bool certified =
        std::any_of(rep.certified.begin(), rep.certified.end(),
                    [e](const GapInterval& iv) { return iv.contains(e); });
    if (certified) continue;
    if (std::binary_search(guaranteed.begin(), guaranteed.end(), e)) continue;
    rep.uncertified_absences.push_back(e);
  }
  return rep;
}

std::string_view scan_status_name(ScanStatus s) {
  switch (s) {
    case ScanStatus::witnessed: return "witnessed";
    case ScanStatus::certified_absent: return "certified-absent";
    case ScanStatus::undecided: return "undecided";
  }
  throw std::logic_error("unknown scan status");
}

ScanReport conjecture_scan(std::uint32_t k, std::uint32_t n_lo,
                           std::uint32_t n_hi, std::uint64_t budget,
                           std::uint64_t seed) {
  if (k < 1) throw std::invalid_argument("conjecture_scan: k must be >= 1");
  if (n_lo < 2 || n_hi > kMaxModulus || n_lo > n_hi)
    throw std::invalid_argument("conjecture_scan: bad modulus range");

  ScanReport report;
  report.k = k;
  report.budget = budget;
  report.seed = seed;
  for (std::uint32_t n = n_lo; n <= n_hi; ++n) {
    ScanRow row;
    row.modulus = n;
    const std::int64_t lo64 = static_cast<std::int64_t>(n / (k + 1)) - 2;
    const std::int64_t hi64 = static_cast<std::int64_t>((n + k - 1) / k) + 2;
    row.lo = static_cast<std::uint32_t>(std::max<std::int64_t>(lo64, 1));
    row.hi = static_cast<std::uint32_t>(
        std::min<std::int64_t>(hi64, static_cast<std::int64_t>(n) - 1));

    const auto gaps = n >= 5 ? gap_intervals(n) : std::vector<GapInterval>{};
    const auto found = search_exponent_set(n, budget, seed);
    row.budget_spent = found.counters.random_trials;

    for (std::uint32_t e = row.lo; e <= row.hi; ++e) {
      ScanEntry entry;
      entry.exponent = e;
      const bool certified =
          std::any_of(gaps.begin(), gaps.end(),
                      [e](const GapInterval& iv) { return iv.contains(e); });
      if (found.contains(e)) {
        if (certified)
          throw std::logic_error(
              "witness found inside a certified gap interval at n=" +
              std::to_string(n) + ", e=" + std::to_string(e));
        entry.status = ScanStatus::witnessed;
        entry.witness = found.witnesses.at(e);
      } else if (certified) {
        entry.status = ScanStatus::certified_absent;
      }
      row.entries.push_back(std::move(entry));
    }
    report.rows.push_back(std::move(row));
  }
  return report;
}

}  // namespace explab
