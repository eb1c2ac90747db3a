#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace explab {

// Reference exponent sets for n = 5..64, shipped as a CSV data file
// (`n,exponents`, exponents space-separated) so the transcription stays
// auditable. The loader enforces the shape: exactly rows 5..64, ascending
// distinct values in [1, n-1], and two pinned rows as transcription
// tripwires.
struct ExponentTable {
  std::map<std::uint32_t, std::vector<std::uint32_t>> rows;

  static constexpr std::uint32_t kFirstRow = 5;
  static constexpr std::uint32_t kLastRow = 64;

  static ExponentTable load(const std::string& path);

  const std::vector<std::uint32_t>& row(std::uint32_t n) const;
  bool has_row(std::uint32_t n) const { return rows.count(n) != 0; }
};

}  // namespace explab
