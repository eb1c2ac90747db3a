// End-to-end acceptance checks. Each numbered criterion prints one
// [PASS]/[FAIL] line; the process exits 1 if any fail. Runtime bounds are
// generous single-core figures, pinned here next to the checks they guard.
#include <sys/wait.h>

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "explab/canonical.hpp"
#include "explab/constructions.hpp"
#include "explab/enumerate.hpp"
#include "explab/exponent.hpp"
#include "explab/residue_set.hpp"
#include "explab/theory.hpp"
#include "explab/witness_cache.hpp"
#include "explab/detail/rng.hpp"

using namespace explab;

namespace {

int failures = 0;

using clock_type = std::chrono::steady_clock;

struct timer {
  clock_type::time_point start = clock_type::now();
  double seconds() const {
    return std::chrono::duration<double>(clock_type::now() - start).count();
  }
};

void report(int index, const std::string& name, bool pass,
            const std::string& detail, double seconds) {
  std::printf("[%s] %2d %s (%.1fs)%s%s\n", pass ? "PASS" : "FAIL", index,
              name.c_str(), seconds, detail.empty() ? "" : ": ",
              detail.c_str());
  std::fflush(stdout);
  if (!pass) ++failures;
}

struct run_result {
  int code = -1;
  std::string out;
};

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

run_result run_cli(const std::string& args) {
  const std::string out_path = "tmp_acceptance_stdout.txt";
  const std::string cmd =
      "\"" EXPLAB_CLI_PATH "\" " + args + " >" + out_path + " 2>&1";
  const int status = std::system(cmd.c_str());
  run_result r;
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.out = slurp(out_path);
  std::remove(out_path.c_str());
  return r;
}

ResidueSet random_set(std::uint32_t n, std::uint32_t size,
                      detail::SplitMix64& g) {
  ResidueSet s(n);
  while (s.size() < std::min(size, n))
    s.insert(static_cast<std::uint32_t>(g.below(n)));
  return s;
}

// ---- criterion 1: exhaustive table agreement -------------------------------

void criterion_1() {
  constexpr double kBound = 600.0;
  timer t;
  const auto r = run_cli("verify-table --min 5 --max 28 --mode exhaustive");
  const double secs = t.seconds();
  std::string detail;
  bool pass = r.code == 0;
  if (!pass) detail = "exit code " + std::to_string(r.code);
  std::size_t rows = 0;
  std::istringstream lines(r.out);
  std::string line;
  while (std::getline(lines, line)) {
    ++rows;
    if (line.rfind("row ", 0) != 0 || line.find(": PASS") == std::string::npos) {
      pass = false;
      if (detail.empty()) detail = "unexpected line \"" + line + "\"";
    }
  }
  if (rows != 24) {
    pass = false;
    if (detail.empty()) detail = "expected 24 rows, saw " + std::to_string(rows);
  }
  if (secs > kBound) {
    pass = false;
    if (detail.empty()) detail = "over the time bound";
  }
  report(1, "table rows 5..28 reproduced exhaustively", pass, detail, secs);
}

// ---- criterion 2: witnessed membership for the searched rows ---------------

void criterion_2() {
  constexpr double kBound = 900.0;
  timer t;
  const auto r = run_cli(
      "verify-table --min 29 --max 64 --mode search --budget 1000000 "
      "--format json");
  const double secs = t.seconds();
  bool pass = r.code == 0;
  std::string detail;
  if (!pass) detail = "exit code " + std::to_string(r.code);
  try {
    const auto j = nlohmann::json::parse(r.out);
    const auto& rows = j.at("rows");
    if (rows.size() != 36) {
      pass = false;
      detail = "expected 36 rows";
    }
    const auto row_of = [&rows](std::uint32_t n) {
      for (const auto& row : rows)
        if (row.at("n").get<std::uint32_t>() == n) return row;
      throw std::runtime_error("row missing");
    };
    for (const auto& row : rows) {
      if (row.at("status").get<std::string>() != "pass") {
        pass = false;
        if (detail.empty())
          detail = "row " + row.at("n").dump() + " not a pass";
      }
      if (!row.at("missing").empty()) {
        pass = false;
        if (detail.empty()) detail = "missing witnesses at " + row.at("n").dump();
      }
    }
    const auto has = [](const nlohmann::json& values, std::uint32_t e) {
      return std::find(values.begin(), values.end(), e) != values.end();
    };
    if (!has(row_of(45).at("computed_exponents"), 22) ||
        !has(row_of(63).at("computed_exponents"), 21)) {
      pass = false;
      if (detail.empty()) detail = "named memberships not witnessed";
    }
    // absences are classified, never asserted as table errors
    const auto row35 = row_of(35);
    if (row35.at("uncertified_absences") !=
            nlohmann::json(std::vector<std::uint32_t>{11, 16}) ||
        row35.at("certified_absences").empty()) {
      pass = false;
      if (detail.empty()) detail = "absence classification at 35 off";
    }
  } catch (const std::exception& ex) {
    pass = false;
    if (detail.empty()) detail = std::string("bad report: ") + ex.what();
  }
  if (secs > kBound) {
    pass = false;
    if (detail.empty()) detail = "over the time bound";
  }
  report(2, "table rows 29..64 witnessed within budget", pass, detail, secs);
}

// ---- criterion 3: closed-form families across [4, 500] ---------------------

void criterion_3() {
  constexpr double kBound = 60.0;
  timer t;
  bool pass = true;
  std::string detail;
  const auto fail_at = [&](std::uint32_t n, const char* family) {
    pass = false;
    if (detail.empty())
      detail = std::string(family) + " off at n=" + std::to_string(n);
  };
  for (std::uint32_t n = 4; n <= 500; ++n) {
    const auto expo = [n](std::vector<std::int64_t> xs) {
      return exponent(make_set(n, xs)).exponent;
    };
    if (expo({0, 1}) != n - 1) fail_at(n, "{0,1}");
    if (expo({0, 1, 2}) != n / 2) fail_at(n, "{0,1,2}");
    if (expo({0, 1, 3}) != n / 3 + 1) fail_at(n, "{0,1,3}");
    if (expo({0, 1, 2, 3}) != (n - 1 + 2) / 3) fail_at(n, "{0,1,2,3}");
    if (n % 2 == 0) {
      if (expo({0, 1, n / 2, n / 2 + 1}) != n / 2 - 1)
        fail_at(n, "{0,1,n/2,n/2+1}");
    }
  }
  const double secs = t.seconds();
  if (secs > kBound) {
    pass = false;
    if (detail.empty()) detail = "over the time bound";
  }
  report(3, "closed-form families hold on [4,500]", pass, detail, secs);
}

// ---- criterion 4: quarter bound sweep and covering equivalence -------------

void criterion_4() {
  constexpr double kBound = 300.0;
  timer t;
  bool pass = true;
  std::string detail;
  for (std::uint32_t n = 28; n <= 300; ++n) {
    if (!verify_quarter_diameter_bound(n)) {
      pass = false;
      if (detail.empty()) detail = "bound fails at n=" + std::to_string(n);
      break;
    }
  }
  detail::SplitMix64 g(11);
  for (int rep = 0; rep < 10'000; ++rep) {
    const std::uint32_t n = 3 + static_cast<std::uint32_t>(g.below(298));
    const std::uint32_t v = 2 + static_cast<std::uint32_t>(g.below(n - 2));
    const std::uint64_t k = 1 + g.below(n + 4);
    const std::vector<std::int64_t> els{0, 1, v};
    const auto r = exponent(make_set(n, els));
    const bool covered = covers_all_residues(n, v, k);
    if (!r.exponent || covered != (*r.exponent <= k)) {
      pass = false;
      if (detail.empty())
        detail = "covering mismatch at (n,t,k)=(" + std::to_string(n) + "," +
                 std::to_string(v) + "," + std::to_string(k) + ")";
      break;
    }
  }
  const double secs = t.seconds();
  if (secs > kBound) {
    pass = false;
    if (detail.empty()) detail = "over the time bound";
  }
  report(4, "quarter bound and covering equivalence", pass, detail, secs);
}

// ---- criterion 5: randomized invariants, 10^4 cases per suite --------------

void criterion_5() {
  timer t;
  bool pass = true;
  std::string detail;
  const auto flunk = [&](const std::string& why) {
    pass = false;
    if (detail.empty()) detail = why;
  };
  constexpr int kCases = 10'000;
  detail::SplitMix64 g(21);

  // translation and unit scaling leave the exponent unchanged
  for (int rep = 0; rep < kCases; ++rep) {
    const std::uint32_t n = 2 + static_cast<std::uint32_t>(g.below(95));
    const auto s = random_set(n, 1 + static_cast<std::uint32_t>(g.below(6)), g);
    const auto base = exponent(s).exponent;
    const auto c = static_cast<std::uint32_t>(g.below(n));
    if (exponent(translate(s, c)).exponent != base)
      flunk("translation changed an exponent");
    std::uint32_t u = 1 + static_cast<std::uint32_t>(g.below(n - 1));
    while (std::gcd(u, n) != 1) u = u % (n - 1) + 1;
    if (exponent(scale(s, u)).exponent != base)
      flunk("unit scaling changed an exponent");
  }

  // adding elements can only shrink the exponent
  for (int rep = 0; rep < kCases; ++rep) {
    const std::uint32_t n = 3 + static_cast<std::uint32_t>(g.below(62));
    auto s = random_set(n, 2 + static_cast<std::uint32_t>(g.below(4)), g);
    s.insert(0);
    s.insert(1);  // keeps it primitive
    const auto base = exponent(s);
    auto bigger = s;
    bigger.insert(static_cast<std::uint32_t>(g.below(n)));
    bigger.insert(static_cast<std::uint32_t>(g.below(n)));
    const auto grown = exponent(bigger);
    if (!base.exponent || !grown.exponent || *grown.exponent > *base.exponent)
      flunk("a superset raised the exponent");
  }

  // with 0 in a primitive set the exponent is the diameter, and both
  // stay below the modulus
  for (int rep = 0; rep < kCases; ++rep) {
    const std::uint32_t n = 2 + static_cast<std::uint32_t>(g.below(95));
    auto s = random_set(n, 1 + static_cast<std::uint32_t>(g.below(5)), g);
    s.insert(0);
    const auto e = exponent(s);
    if (!e.primitive) continue;
    if (*e.exponent > n - 1) flunk("exponent exceeded n-1");
    if (e.exponent != diameter(s).diameter)
      flunk("exponent and diameter disagree");
  }

  // every quotient bound is a genuine diameter bound
  for (int rep = 0; rep < kCases; ++rep) {
    const std::uint32_t n = 4 + static_cast<std::uint32_t>(g.below(93));
    auto s = random_set(n, 1 + static_cast<std::uint32_t>(g.below(5)), g);
    s.insert(0);
    s.insert(1);
    const auto d = diameter(s).diameter;
    if (!d) {
      flunk("a set containing 1 must be strongly connected");
      continue;
    }
    for (const auto& b : quotient_diameter_bounds(s))
      if (*d > b.bound) flunk("a quotient bound failed");
  }

  // fold sizes never decrease, and the full set absorbs everything
  for (int rep = 0; rep < kCases; ++rep) {
    const std::uint32_t n = 2 + static_cast<std::uint32_t>(g.below(95));
    const auto s = random_set(n, 1 + static_cast<std::uint32_t>(g.below(6)), g);
    const auto k = 1 + g.below(n);
    if (k_fold_sumset(s, k).size() > k_fold_sumset(s, k + 1).size())
      flunk("a fold shrank");
    if (sumset(ResidueSet::full(n), s) != ResidueSet::full(n))
      flunk("the full set is not absorbing");
  }

  report(5, "randomized invariant suites", pass, detail, t.seconds());
}

// ---- criterion 6: search coverage at n=90 ----------------------------------

void criterion_6() {
  constexpr double kBound = 60.0;
  timer t;
  const auto r = search_exponent_set(90, 1'000'000, kDefaultSeed);
  bool pass = true;
  std::string detail;
  std::vector<std::uint32_t> wanted = {1,  2,  3,  4,  5,  6,  7,  8,
                                       9,  10, 11, 12, 13, 15, 16, 18,
                                       23, 30, 31, 44, 45, 89};
  wanted.insert(wanted.end(), {17, 19, 21, 24});
  std::sort(wanted.begin(), wanted.end());
  for (const auto e : wanted)
    if (!r.contains(e)) {
      pass = false;
      detail = "missing exponent " + std::to_string(e);
      break;
    }
  for (const auto& [e, w] : r.witnesses) {
    const auto check = exponent(w.witness.to_set());
    if (!check.exponent || *check.exponent != e) {
      pass = false;
      if (detail.empty()) detail = "witness fails at " + std::to_string(e);
    }
  }
  const double secs = t.seconds();
  if (secs > kBound) {
    pass = false;
    if (detail.empty()) detail = "over the time bound";
  }
  report(6, "search coverage at n=90", pass, detail, secs);
}

// ---- criteria 7 and 8 share the exhaustive sets up to 28 -------------------

std::uint32_t isqrt(std::uint32_t n) {
  std::uint32_t r = 0;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

void criteria_7_and_8() {
  timer t;
  std::map<std::uint32_t, ExponentSetResult> exact;
  for (std::uint32_t n = 2; n <= 28; ++n) exact.emplace(n, enumerate_exact(n));

  bool pass7 = true;
  std::string detail7;
  for (std::uint32_t n = 2; n <= 28; ++n)
    for (std::uint32_t e = 1; e <= isqrt(n); ++e)
      if (!exact.at(n).contains(e)) {
        pass7 = false;
        if (detail7.empty())
          detail7 = std::to_string(e) + " missing at n=" + std::to_string(n);
      }
  for (std::uint32_t n = 9; n <= 100; ++n)
    for (std::uint32_t k = 3; k <= n / 3; ++k) {
      if (!division_condition(n, k)) continue;
      const auto f = find_witness(n, k, 1'000'000, kDefaultSeed);
      if (!f.record) {
        pass7 = false;
        if (detail7.empty())
          detail7 = "no witness for (n,k)=(" + std::to_string(n) + "," +
                    std::to_string(k) + ")";
        continue;
      }
      const auto check = exponent(f.record->witness.to_set());
      if (!check.exponent || *check.exponent != k) {
        pass7 = false;
        if (detail7.empty())
          detail7 = "bad witness at (n,k)=(" + std::to_string(n) + "," +
                    std::to_string(k) + ")";
      }
    }
  const double secs7 = t.seconds();
  report(7, "sqrt range and division-condition witnesses", pass7, detail7,
         secs7);

  timer t8;
  bool pass8 = true;
  std::string detail8;
  for (std::uint32_t n = 5; n <= 28; ++n)
    for (const auto& iv : gap_intervals(n))
      for (const auto e : exact.at(n).exponents)
        if (iv.contains(e)) {
          pass8 = false;
          if (detail8.empty())
            detail8 = "certified interval holds " + std::to_string(e) +
                      " at n=" + std::to_string(n);
        }
  report(8, "certified gaps exclude attained exponents", pass8, detail8,
         t8.seconds());
}

// ---- criterion 9: the scan stays honestly tri-state ------------------------

void criterion_9() {
  timer t;
  bool pass = true;
  std::string detail;
  const auto rep = conjecture_scan(4, 57, 70, kDefaultBudget, kDefaultSeed);
  bool saw_open_case = false;
  for (const auto& row : rep.rows) {
    const auto gaps = gap_intervals(row.modulus);
    for (const auto& e : row.entries) {
      switch (e.status) {
        case ScanStatus::witnessed: {
          if (!e.witness) {
            pass = false;
            detail = "witnessed entry without a witness";
            break;
          }
          const auto check = exponent(e.witness->witness.to_set());
          if (!check.exponent || *check.exponent != e.exponent) {
            pass = false;
            detail = "scan witness fails verification";
          }
          break;
        }
        case ScanStatus::certified_absent: {
          const bool covered =
              std::any_of(gaps.begin(), gaps.end(), [&](const GapInterval& iv) {
                return iv.contains(e.exponent);
              });
          if (!covered || e.witness) {
            pass = false;
            detail = "certified-absent entry not backed by an interval";
          }
          break;
        }
        case ScanStatus::undecided:
          if (e.witness) {
            pass = false;
            detail = "undecided entry carries a witness";
          }
          if (row.modulus == 65 && e.exponent == 15) saw_open_case = true;
          break;
      }
    }
  }
  if (!saw_open_case) {
    pass = false;
    if (detail.empty()) detail = "15 at n=65 was not reported undecided";
  }
  report(9, "conjecture scan stays tri-state on [57,70]", pass, detail,
         t.seconds());
}

// ---- criterion 10: the deep run settles 11 and 16 at n=35 ------------------

void criterion_10() {
  timer t;
  const std::string cache_path = "tmp_acceptance_deep_cache.jsonl";
  std::remove(cache_path.c_str());
  const auto r = run_cli(
      "verify-table --min 35 --max 35 --mode search --deep --budget 1 "
      "--seed 1 --cap 5 --cache " + cache_path);
  bool pass = r.code == 0;
  std::string detail;
  if (!pass) detail = "exit code " + std::to_string(r.code);
  if (r.out.find("(deep run certified: 11 16)") == std::string::npos) {
    pass = false;
    if (detail.empty()) detail = "absences not certified";
  }
  std::ostringstream warnings;
  const auto cache = WitnessCache::load(cache_path, warnings);
  const auto* rec = cache.find(35, 12);
  if (!warnings.str().empty() || !rec || rec->method != "exhaustive") {
    pass = false;
    if (detail.empty()) detail = "cache record missing or unverified";
  }
  std::remove(cache_path.c_str());
  report(10, "deep run settles the open absences at n=35", pass, detail,
         t.seconds());
}

}  // namespace

int main() {
  criterion_1();
  criterion_2();
  criterion_3();
  criterion_4();
  criterion_5();
  criterion_6();
  criteria_7_and_8();
  criterion_9();
  criterion_10();
  if (failures) std::printf("%d criteria failed\n", failures);
  return failures ? 1 : 0;
}
