#include "explab/reference_table.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace explab {

namespace {

std::runtime_error bad(const std::string& path, const std::string& why) {
  return std::runtime_error("exponent table " + path + ": " + why);
}

}  // namespace

ExponentTable ExponentTable::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw bad(path, "cannot open");
  std::string line;
  if (!std::getline(in, line) || line != "n,exponents")
    throw bad(path, "expected header \"n,exponents\"");

  ExponentTable table;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos)
      throw bad(path, "line " + std::to_string(lineno) + ": no comma");
    std::uint32_t n = 0;
    try {
      n = static_cast<std::uint32_t>(std::stoul(line.substr(0, comma)));
    } catch (const std::exception&) {
      throw bad(path, "line " + std::to_string(lineno) + ": bad modulus");
    }
    if (n < kFirstRow || n > kLastRow)
      throw bad(path, "line " + std::to_string(lineno) + ": modulus " +
                          std::to_string(n) + " outside 5..64");
    if (table.rows.count(n))
      throw bad(path, "duplicate row for n=" + std::to_string(n));

    std::vector<std::uint32_t> values;
    std::istringstream vs(line.substr(comma + 1));
    std::uint32_t v = 0;
    while (vs >> v) values.push_back(v);
    if (!vs.eof())
      throw bad(path, "line " + std::to_string(lineno) + ": bad value list");
    if (values.empty())
      throw bad(path, "line " + std::to_string(lineno) + ": empty row");
    if (!std::is_sorted(values.begin(), values.end()) ||
        std::adjacent_find(values.begin(), values.end()) != values.end())
      throw bad(path, "row n=" + std::to_string(n) +
                          ": values must be ascending and distinct");
    if (values.front() < 1 || values.back() > n - 1)
      throw bad(path, "row n=" + std::to_string(n) + ": value outside [1, n-1]");
    table.rows.emplace(n, std::move(values));
  }

  if (table.rows.size() != kLastRow - kFirstRow + 1)
    throw bad(path, "expected " + std::to_string(kLastRow - kFirstRow + 1) +
                        " rows, got " + std::to_string(table.rows.size()));

  const std::vector<std::uint32_t> row5 = {1, 2, 4};
  std::vector<std::uint32_t> row64;
  for (std::uint32_t e = 1; e <= 18; ++e) row64.push_back(e);
  row64.insert(row64.end(), {22, 31, 32, 63});
  if (table.rows.at(5) != row5) throw bad(path, "row n=5 fails the pinned check");
  if (table.rows.at(64) != row64)
    throw bad(path, "row n=64 fails the pinned check");
  return table;
}

const std::vector<std::uint32_t>& ExponentTable::row(std::uint32_t n) const {
  const auto it = rows.find(n);
  if (it == rows.end())
    throw std::out_of_range("no table row for n=" + std::to_string(n));
  return it->second;
}

}  // namespace explab
