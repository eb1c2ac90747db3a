#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <utility>

#include "explab/enumerate.hpp"

namespace explab {

// Environment variable consulted by the CLI when --cache is not given.
inline constexpr const char* kCacheEnvVar = "EXPONENT_LAB_CACHE";

// Append-only JSON Lines store of witness records. One object per line with
// fields exactly: n, exponent, witness (sorted array), method, seed
// (integer or null). Every record is re-verified on load; lines that fail
// to parse or to re-verify are skipped with a warning, never silently.
class WitnessCache {
 public:
  WitnessCache() = default;

  static WitnessCache load(const std::string& path, std::ostream& warnings);
  static WitnessCache parse(std::istream& in, std::ostream& warnings);

  // First loaded record for (n, e), if any.
  const WitnessRecord* find(std::uint32_t n, std::uint32_t e) const;

  // Inserts into memory unless (n, e) is already present.
  void remember(const WitnessRecord& rec);

  std::size_t size() const { return records_.size(); }

  const std::map<std::pair<std::uint32_t, std::uint32_t>, WitnessRecord>&
  records() const {
    return records_;
  }

  // Appends one serialized record to the file (creating it if needed).
  static void append(const std::string& path, const WitnessRecord& rec);

  // One JSON line, fixed field order, no trailing newline.
  static std::string serialize(const WitnessRecord& rec);

  // Parses and structurally validates one line. Does not re-verify the
  // exponent; the loader does that. On failure returns nullopt and, when
  // `error` is given, stores the reason.
  static std::optional<WitnessRecord> deserialize(const std::string& line,
                                                  std::string* error);

 private:
  std::map<std::pair<std::uint32_t, std::uint32_t>, WitnessRecord> records_;
};

}  // namespace explab
