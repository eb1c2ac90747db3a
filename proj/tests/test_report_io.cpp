#include <string>
#include <vector>

#include "doctest.h"
#include "explab/enumerate.hpp"
#include "explab/report_io.hpp"
#include "explab/theory.hpp"

using namespace explab;

namespace {

WitnessRecord record(std::uint32_t n, std::uint32_t e,
                     std::vector<std::uint32_t> elems, std::string method,
                     std::optional<std::uint64_t> seed = std::nullopt) {
  WitnessRecord r;
  r.modulus = n;
  r.exponent = e;
  r.witness = GeneratorSpec(n, std::move(elems));
  r.method = std::move(method);
  r.seed = seed;
  return r;
}

ExponentSetResult sample_set_result() {
  ExponentSetResult r;
  r.modulus = 5;
  r.exhaustive = true;
  r.exponents = {1, 2, 4};
  r.witnesses.emplace(2, record(5, 2, {0, 1, 2}, "construction"));
  r.witnesses.emplace(4, record(5, 4, {0, 1}, "sweep", 3));
  r.counters = {16, 4, 10, 0, 30};
  return r;
}

GapReport sample_gap_report() {
  GapReport g;
  g.modulus = 35;
  g.certified = {{13, 15, GapTag::mid}, {18, 33, GapTag::upper}};
  g.uncertified_absences = {11, 16};
  g.absences_definitive = false;
  g.consistent = true;
  return g;
}

}  // namespace

TEST_CASE("output format names") {
  CHECK(parse_output_format("text") == OutputFormat::text);
  CHECK(parse_output_format("json") == OutputFormat::json);
  CHECK(parse_output_format("csv") == OutputFormat::csv);
  CHECK(!parse_output_format("yaml"));
  CHECK(!parse_output_format(""));
}

TEST_CASE("single exponent rendering") {
  ExponentResult r;
  r.modulus = 9;
  r.set = GeneratorSpec(9, {0, 1, 3});
  r.primitive = true;
  r.exponent = 4;
  r.iterations_used = 3;
  CHECK(render_text(r) == "4\n");
  CHECK(render_json(r) == R"({
  "n": 9,
  "set": [
    0,
    1,
    3
  ],
  "primitive": true,
  "exponent": 4,
  "iterations_used": 3
}
)");

  ExponentResult imprimitive;
  imprimitive.modulus = 6;
  imprimitive.set = GeneratorSpec(6, {0, 2, 4});
  CHECK(render_text(imprimitive) == "not primitive\n");
  CHECK(render_json(imprimitive) == R"({
  "n": 6,
  "set": [
    0,
    2,
    4
  ],
  "primitive": false,
  "exponent": null,
  "iterations_used": 0
}
)");
}

TEST_CASE("exponent set text rendering") {
  CHECK(render_text(sample_set_result()) == R"(1 2 4
n: 5
exhaustive: yes
witnesses:
  2: 0,1,2 (construction)
  4: 0,1 (sweep)
checked: construction=4 sweep=10 random=0 exhaustive=16 exponent=30
)");
}

TEST_CASE("exponent set json round-trips byte-identically") {
  const auto doc = render_json(sample_set_result());
  const auto parsed = parse_exponent_set_json(doc);
  CHECK(render_json(parsed) == doc);
  CHECK(parsed.modulus == 5);
  CHECK(parsed.exhaustive);
  CHECK(parsed.exponents == std::vector<std::uint32_t>{1, 2, 4});
  REQUIRE(parsed.witnesses.count(4) == 1);
  CHECK(parsed.witnesses.at(4) == record(5, 4, {0, 1}, "sweep", 3));
  CHECK(parsed.counters.exhaustive_candidates == 16);
  CHECK(parsed.counters.exponent_checks == 30);

  // and on a real computed result
  const auto real = enumerate_exact(12);
  const auto real_doc = render_json(real);
  CHECK(render_json(parse_exponent_set_json(real_doc)) == real_doc);
}

TEST_CASE("exponent set json parse rejects unknown methods") {
  auto doc = render_json(sample_set_result());
  const auto pos = doc.find("\"sweep\"");
  REQUIRE(pos != std::string::npos);
  doc.replace(pos, 7, "\"wizardry\"");
  CHECK_THROWS_AS(parse_exponent_set_json(doc), std::runtime_error);
}

TEST_CASE("witness csv renders and parses") {
  const std::vector<CsvWitnessRow> rows = {
      {9, 4, {0, 1, 3}, "exhaustive"},
      {12, 11, {0, 1}, "random"},
  };
  const auto doc = render_csv(rows);
  CHECK(doc == "n,exponent,witness,method\n9,4,0-1-3,exhaustive\n12,11,0-1,random\n");
  CHECK(parse_witness_csv(doc) == rows);

  CHECK(render_csv(sample_set_result()) ==
        "n,exponent,witness,method\n5,2,0-1-2,construction\n5,4,0-1,sweep\n");

  CHECK(parse_witness_csv("n,exponent,witness,method\n").empty());
  CHECK_THROWS_AS(parse_witness_csv("n,e,witness,method\n9,4,0-1-3,exhaustive\n"),
                  std::runtime_error);
  CHECK_THROWS_AS(parse_witness_csv("n,exponent,witness,method\n9,4,0-1-3\n"),
                  std::runtime_error);
  CHECK_THROWS_AS(
      parse_witness_csv("n,exponent,witness,method\n9,4,0-1-3,wizardry\n"),
      std::runtime_error);
  CHECK_THROWS_AS(parse_witness_csv("n,exponent,witness,method\nx,4,0-1-3,sweep\n"),
                  std::runtime_error);
}

TEST_CASE("gap report rendering") {
  CHECK(render_text(sample_gap_report()) ==
        R"(n=35 consistent=yes absences=budget-limited
certified: [13,15]=cor4-mid [18,33]=cor4-upper
uncertified absences: 11 16
)");

  GapReport clean;
  clean.modulus = 5;
  clean.certified = {{3, 3, GapTag::upper}};
  clean.absences_definitive = true;
  CHECK(render_text(clean) ==
        R"(n=5 consistent=yes absences=definitive
certified: [3,3]=cor4-upper
uncertified absences: none
)");

  GapReport broken;
  broken.modulus = 40;
  broken.consistent = false;
  broken.absences_definitive = true;
  CHECK(render_text(broken) ==
        R"(n=40 consistent=no absences=definitive
certified: none
uncertified absences: none
)");
}

TEST_CASE("gap report json round-trips byte-identically") {
  const auto doc = render_json(sample_gap_report());
  const auto parsed = parse_gap_report_json(doc);
  CHECK(render_json(parsed) == doc);
  CHECK(parsed.modulus == 35);
  CHECK(parsed.certified == sample_gap_report().certified);
  CHECK(parsed.uncertified_absences == std::vector<std::uint32_t>{11, 16});
  CHECK(!parsed.absences_definitive);
  CHECK(parsed.consistent);

  const auto real = verify_gaps(enumerate_exact(24));
  const auto real_doc = render_json(real);
  CHECK(render_json(parse_gap_report_json(real_doc)) == real_doc);

  auto bad = doc;
  const auto pos = bad.find("\"cor4-mid\"");
  REQUIRE(pos != std::string::npos);
  bad.replace(pos, 10, "\"cor9-mid\"");
  CHECK_THROWS_AS(parse_gap_report_json(bad), std::runtime_error);
}

TEST_CASE("scan report rendering") {
  ScanReport r;
  r.k = 4;
  r.budget = 1000;
  r.seed = 1;
  ScanRow row;
  row.modulus = 65;
  row.lo = 11;
  row.hi = 19;
  row.budget_spent = 123;
  row.entries.push_back({12, ScanStatus::witnessed,
                         record(65, 12, {0, 1, 3}, "construction")});
  row.entries.push_back({15, ScanStatus::undecided, std::nullopt});
  row.entries.push_back({19, ScanStatus::certified_absent, std::nullopt});
  r.rows.push_back(std::move(row));

  CHECK(render_text(r) == R"(k=4 budget=1000 seed=1
n=65 window=[11,19] trials=123
  12: witnessed witness=0,1,3
  15: undecided
  19: certified-absent
)");

  const auto doc = render_json(r);
  CHECK(doc.find("\"status\": \"certified-absent\"") != std::string::npos);
  CHECK(doc.find("\"witness\": ") != std::string::npos);
  CHECK(doc.back() == '\n');
}

TEST_CASE("table verification rendering") {
  TableVerification v;
  v.mode = VerifyMode::search;

  RowOutcome pass;
  pass.modulus = 12;
  v.rows.push_back(pass);

  RowOutcome deep_available;
  deep_available.modulus = 35;
  deep_available.omissions = {13};
  deep_available.uncertified_absences = {11, 16};
  v.rows.push_back(deep_available);

  RowOutcome deep_ran;
  deep_ran.modulus = 35;
  deep_ran.uncertified_absences = {11, 16};
  deep_ran.deep_ran = true;
  deep_ran.deep_certified = {11, 16};
  v.rows.push_back(deep_ran);

  RowOutcome mismatch;
  mismatch.modulus = 40;
  mismatch.status = RowStatus::mismatch;
  mismatch.contradicted = {21};
  v.rows.push_back(mismatch);

  RowOutcome inconclusive;
  inconclusive.modulus = 29;
  inconclusive.status = RowStatus::inconclusive;
  inconclusive.missing = {9};
  v.rows.push_back(inconclusive);

  RowOutcome exhaustive_mismatch;
  exhaustive_mismatch.modulus = 6;
  exhaustive_mismatch.status = RowStatus::mismatch;
  exhaustive_mismatch.not_in_table = {3};
  exhaustive_mismatch.not_computed = {4};
  v.rows.push_back(exhaustive_mismatch);

  CHECK(render_text(v) == R"(row 12: PASS
row 35: PASS; witnessed but not listed: 13; uncertified: 11 16 (deep run available)
row 35: PASS; uncertified: 11 16 (deep run certified: 11 16)
row 40: MISMATCH; witnesses inside certified gaps: 21
row 29: INCONCLUSIVE; missing witnesses: 9
row 6: MISMATCH; computed but not in table: 3; in table but not computed: 4
)");

  const auto doc = render_json(v);
  CHECK(doc.find("\"mode\": \"search\"") != std::string::npos);
  CHECK(doc.find("\"status\": \"mismatch\"") != std::string::npos);
  CHECK(doc.find("\"status\": \"inconclusive\"") != std::string::npos);
  CHECK(doc.find("\"deep_certified\": [") != std::string::npos);
  CHECK(doc.back() == '\n');

  TableVerification exhaustive;
  exhaustive.mode = VerifyMode::exhaustive;
  CHECK(render_json(exhaustive).find("\"mode\": \"exhaustive\"") !=
        std::string::npos);
}
