#include "explab/table_verify.hpp"

#include <algorithm>
#include <stdexcept>

namespace explab {

namespace {

constexpr std::uint32_t kDeepModulus = 35;
constexpr std::uint32_t kDeepThreshold = 11;

bool listed(const std::vector<std::uint32_t>& row, std::uint32_t e) {
  return std::binary_search(row.begin(), row.end(), e);
}

void verify_exhaustive_row(const std::vector<std::uint32_t>& row,
                           RowOutcome& out, unsigned threads,
                           std::uint32_t cap) {
  out.computed = enumerate_exact(out.modulus, threads, cap);
  std::set_difference(out.computed.exponents.begin(),
                      out.computed.exponents.end(), row.begin(), row.end(),
                      std::back_inserter(out.not_in_table));
  std::set_difference(row.begin(), row.end(), out.computed.exponents.begin(),
                      out.computed.exponents.end(),
                      std::back_inserter(out.not_computed));
  if (!out.not_in_table.empty() || !out.not_computed.empty())
    out.status = RowStatus::mismatch;
}

void classify_absences(const std::vector<std::uint32_t>& row,
                       RowOutcome& out) {
  const auto gaps = gap_intervals(out.modulus);
  for (std::uint32_t e = 1; e < out.modulus; ++e) {
    if (listed(row, e)) continue;
    const bool certified =
        std::any_of(gaps.begin(), gaps.end(),
                    [e](const GapInterval& iv) { return iv.contains(e); });
    (certified ? out.certified_absences : out.uncertified_absences)
        .push_back(e);
  }
}

void run_deep(const std::vector<std::uint32_t>& row, RowOutcome& out,
              unsigned threads) {
  const auto scan =
      exact_high_exponents(out.modulus, kDeepThreshold, threads);
  out.deep_ran = true;
  std::vector<std::uint32_t> row_high;
  for (const auto e : row)
    if (e >= kDeepThreshold) row_high.push_back(e);
  if (scan.exponents != row_high) {
    out.status = RowStatus::mismatch;
    std::set_difference(scan.exponents.begin(), scan.exponents.end(),
                        row_high.begin(), row_high.end(),
                        std::back_inserter(out.contradicted));
    return;
  }
  for (const auto& [e, w] : scan.witnesses) out.deep_witnesses.push_back(w);
  for (const auto a : out.uncertified_absences)
    if (a >= kDeepThreshold) out.deep_certified.push_back(a);
}

void verify_search_row(const std::vector<std::uint32_t>& row, RowOutcome& out,
                       std::uint64_t budget, std::uint64_t seed,
                       unsigned threads, bool deep) {
  out.computed = search_exponent_set(out.modulus, budget, seed, threads);
  const auto gaps = gap_intervals(out.modulus);

  for (const auto e : row)
    if (!out.computed.contains(e)) out.missing.push_back(e);

  for (const auto e : out.computed.exponents) {
    if (listed(row, e)) continue;
    const bool certified =
        std::any_of(gaps.begin(), gaps.end(),
                    [e](const GapInterval& iv) { return iv.contains(e); });
    (certified ? out.contradicted : out.omissions).push_back(e);
  }

  if (!out.contradicted.empty())
    out.status = RowStatus::mismatch;
  else if (!out.missing.empty())
    out.status = RowStatus::inconclusive;

  if (deep && out.modulus == kDeepModulus &&
      out.status != RowStatus::mismatch) {
    run_deep(row, out, threads);
    if (out.deep_ran && out.status == RowStatus::inconclusive) {
      // The deep run proved every listed value at or above the threshold,
      // so only misses below it keep the row inconclusive.
      std::erase_if(out.missing,
                    [](std::uint32_t e) { return e >= kDeepThreshold; });
      if (out.missing.empty()) out.status = RowStatus::pass;
    }
  }
}

}  // namespace

bool TableVerification::all_pass() const {
  return std::all_of(rows.begin(), rows.end(), [](const RowOutcome& r) {
    return r.status == RowStatus::pass;
  });
}

int TableVerification::exit_code() const {
  bool inconclusive = false;
  for (const auto& r : rows) {
    if (r.status == RowStatus::mismatch) return 1;
    if (r.status == RowStatus::inconclusive) inconclusive = true;
  }
  return inconclusive ? 3 : 0;
}

TableVerification verify_table_rows(const ExponentTable& table,
                                    std::uint32_t n_lo, std::uint32_t n_hi,
                                    VerifyMode mode, std::uint64_t budget,
                                    std::uint64_t seed, unsigned threads,
                                    std::uint32_t cap, bool deep) {
  if (n_lo < ExponentTable::kFirstRow || n_hi > ExponentTable::kLastRow ||
      n_lo > n_hi)
    throw std::invalid_argument("verify_table_rows: range outside the table");

  TableVerification result;
  result.mode = mode;
  for (std::uint32_t n = n_lo; n <= n_hi; ++n) {
    const auto& row = table.row(n);
    RowOutcome out;
    out.modulus = n;
    classify_absences(row, out);
    if (mode == VerifyMode::exhaustive)
      verify_exhaustive_row(row, out, threads, cap);
    else
      verify_search_row(row, out, budget, seed, threads, deep);
    result.rows.push_back(std::move(out));
  }
  return result;
}

}  // namespace explab
