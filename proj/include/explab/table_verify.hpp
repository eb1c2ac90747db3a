#pragma once

#include <cstdint>
#include <vector>

#include "explab/enumerate.hpp"
#include "explab/reference_table.hpp"
#include "explab/theory.hpp"

namespace explab {

enum class VerifyMode { exhaustive, search };

enum class RowStatus { pass, mismatch, inconclusive };

struct RowOutcome {
  std::uint32_t modulus = 0;
  RowStatus status = RowStatus::pass;

  // Search mode: listed values the search failed to witness (inconclusive),
  // witnessed values the table omits, split by whether a certificate says
  // they cannot exist (contradiction = mismatch) or not (omission warning).
  std::vector<std::uint32_t> missing;
  std::vector<std::uint32_t> contradicted;
  std::vector<std::uint32_t> omissions;

  // Exhaustive mode: symmetric difference against the table row.
  std::vector<std::uint32_t> not_in_table;
  std::vector<std::uint32_t> not_computed;

  // The table's absences, classified.
  std::vector<std::uint32_t> certified_absences;
  std::vector<std::uint32_t> uncertified_absences;

  // Deep run (n = 35 only): exact determination of the exponents at or
  // above the smallest uncertified absence.
  bool deep_ran = false;
  std::vector<std::uint32_t> deep_certified;  // absences settled by the run
  std::vector<WitnessRecord> deep_witnesses;

  ExponentSetResult computed;
};

struct TableVerification {
  VerifyMode mode = VerifyMode::exhaustive;
  std::vector<RowOutcome> rows;

  bool all_pass() const;
  // 0 all pass, 1 any mismatch, 3 inconclusive rows only.
  int exit_code() const;
};

// Verifies table rows n_lo..n_hi. Exhaustive mode compares full exponent
// sets; search mode requires a verified witness per listed value and
// classifies absences via the certified gap intervals. deep enables the
// exact high-exponent run at n = 35.
TableVerification verify_table_rows(const ExponentTable& table,
                                    std::uint32_t n_lo, std::uint32_t n_hi,
                                    VerifyMode mode, std::uint64_t budget,
                                    std::uint64_t seed, unsigned threads,
                                    std::uint32_t cap, bool deep);

}  // namespace explab
