#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "explab/enumerate.hpp"
#include "explab/exponent.hpp"
#include "explab/table_verify.hpp"
#include "explab/theory.hpp"

namespace explab {

enum class OutputFormat { text, json, csv };

std::optional<OutputFormat> parse_output_format(std::string_view name);

// All render functions return a complete document ending in a newline and
// are deterministic, so emitted JSON and CSV can be parsed and re-rendered
// byte-identically.

std::string render_text(const ExponentResult& r);
std::string render_json(const ExponentResult& r);

std::string render_text(const ExponentSetResult& r);
std::string render_json(const ExponentSetResult& r);
std::string render_csv(const ExponentSetResult& r);
ExponentSetResult parse_exponent_set_json(const std::string& text);

// The CSV form carries one row per witness: n, exponent, the witness as
// dash-separated residues, and the method.
struct CsvWitnessRow {
  std::uint32_t modulus = 0;
  std::uint32_t exponent = 0;
  std::vector<std::uint32_t> witness;
  std::string method;

  bool operator==(const CsvWitnessRow&) const = default;
};
std::string render_csv(const std::vector<CsvWitnessRow>& rows);
std::vector<CsvWitnessRow> parse_witness_csv(const std::string& text);

std::string render_text(const GapReport& r);
std::string render_json(const GapReport& r);
GapReport parse_gap_report_json(const std::string& text);

std::string render_text(const ScanReport& r);
std::string render_json(const ScanReport& r);

std::string render_text(const TableVerification& r);
std::string render_json(const TableVerification& r);

}  // namespace explab
