#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "explab/reference_table.hpp"

using namespace explab;

namespace {

// Temporary CSV that cleans up after itself.
struct temp_csv {
  std::string path;
  explicit temp_csv(const std::string& name, const std::string& content)
      : path("tmp_" + name) {
    std::ofstream out(path);
    out << content;
  }
  ~temp_csv() { std::remove(path.c_str()); }
};

std::string shipped_csv_text() {
  std::ifstream in(EXPLAB_TABLE_CSV);
  REQUIRE(in);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

// One full-shape table built from the shipped file with a single line edit.
std::string with_row_replaced(const std::string& from, const std::string& to) {
  auto text = shipped_csv_text();
  const auto pos = text.find(from);
  REQUIRE(pos != std::string::npos);
  return text.replace(pos, from.size(), to);
}

}  // namespace

TEST_CASE("the shipped table loads and exposes rows") {
  const auto table = ExponentTable::load(EXPLAB_TABLE_CSV);
  CHECK(table.rows.size() == 60);
  CHECK(table.has_row(5));
  CHECK(table.has_row(64));
  CHECK(!table.has_row(4));
  CHECK(!table.has_row(65));

  CHECK(table.row(5) == std::vector<std::uint32_t>{1, 2, 4});
  CHECK(table.row(12) == std::vector<std::uint32_t>{1, 2, 3, 4, 5, 6, 11});
  CHECK(table.row(17) == std::vector<std::uint32_t>{1, 2, 3, 4, 5, 6, 8, 16});
  CHECK(table.row(35) == std::vector<std::uint32_t>{1, 2, 3, 4, 5, 6, 7, 8, 9,
                                                    10, 12, 17, 34});
  std::vector<std::uint32_t> row64;
  for (std::uint32_t e = 1; e <= 18; ++e) row64.push_back(e);
  row64.insert(row64.end(), {22, 31, 32, 63});
  CHECK(table.row(64) == row64);

  CHECK_THROWS_AS(table.row(4), std::out_of_range);
  CHECK_THROWS_AS(table.row(65), std::out_of_range);
}

TEST_CASE("every row ends in n-1 and starts at 1") {
  const auto table = ExponentTable::load(EXPLAB_TABLE_CSV);
  for (const auto& [n, values] : table.rows) {
    CHECK(values.front() == 1);
    CHECK(values.back() == n - 1);
  }
}

TEST_CASE("load rejects a missing file") {
  CHECK_THROWS_AS(ExponentTable::load("no_such_table.csv"),
                  std::runtime_error);
}

TEST_CASE("load rejects shape problems") {
  const auto expect_reject = [](const std::string& name,
                                const std::string& content) {
    temp_csv tmp(name, content);
    CHECK_THROWS_AS(ExponentTable::load(tmp.path), std::runtime_error);
  };

  expect_reject("bad_header.csv", "modulus,exponents\n5,1 2 4\n");
  expect_reject("no_comma.csv", "n,exponents\n5 1 2 4\n");
  expect_reject("bad_modulus.csv", "n,exponents\nx,1 2 4\n");
  expect_reject("modulus_low.csv", "n,exponents\n4,1 2 3\n");
  expect_reject("modulus_high.csv", "n,exponents\n65,1 2 64\n");
  expect_reject("too_few_rows.csv", "n,exponents\n5,1 2 4\n");
}

TEST_CASE("load rejects value problems inside a full table") {
  const auto expect_reject = [](const std::string& name,
                                const std::string& text) {
    temp_csv tmp(name, text);
    CHECK_THROWS_AS(ExponentTable::load(tmp.path), std::runtime_error);
  };

  expect_reject("dup_row.csv",
                with_row_replaced("12,1 2 3 4 5 6 11", "17,1 2 3 4 5 6 8 16"));
  expect_reject("unsorted.csv",
                with_row_replaced("12,1 2 3 4 5 6 11", "12,2 1 3 4 5 6 11"));
  expect_reject("repeated_value.csv",
                with_row_replaced("12,1 2 3 4 5 6 11", "12,1 1 3 4 5 6 11"));
  expect_reject("value_zero.csv",
                with_row_replaced("12,1 2 3 4 5 6 11", "12,0 2 3 4 5 6 11"));
  expect_reject("value_too_big.csv",
                with_row_replaced("12,1 2 3 4 5 6 11", "12,1 2 3 4 5 6 12"));
  expect_reject("bad_token.csv",
                with_row_replaced("12,1 2 3 4 5 6 11", "12,1 2 x 4 5 6 11"));
  expect_reject("empty_row.csv", with_row_replaced("12,1 2 3 4 5 6 11", "12,"));
}

TEST_CASE("the pinned transcription tripwires fire") {
  // both replacements keep a legal shape, so only the pinned check can catch
  temp_csv five("tripwire5.csv",
                with_row_replaced("5,1 2 4", "5,1 2 3 4"));
  CHECK_THROWS_WITH_AS(ExponentTable::load(five.path),
                       doctest::Contains("row n=5 fails the pinned check"),
                       std::runtime_error);

  temp_csv sixty_four(
      "tripwire64.csv",
      with_row_replaced(
          "64,1 2 3 4 5 6 7 8 9 10 11 12 13 14 15 16 17 18 22 31 32 63",
          "64,1 2 3 4 5 6 7 8 9 10 11 12 13 14 15 16 17 18 21 31 32 63"));
  CHECK_THROWS_WITH_AS(ExponentTable::load(sixty_four.path),
                       doctest::Contains("row n=64 fails the pinned check"),
                       std::runtime_error);
}

TEST_CASE("a structurally valid edited table still loads") {
  // sanity-check the editing helper itself: an identity edit keeps it loadable
  temp_csv same("identity.csv", with_row_replaced("5,1 2 4", "5,1 2 4"));
  const auto table = ExponentTable::load(same.path);
  CHECK(table.rows.size() == 60);
}
