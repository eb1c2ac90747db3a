#include <cctype>
#include <cstdint>
#include <iostream>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "explab/constructions.hpp"
#include "explab/enumerate.hpp"
#include "explab/exponent.hpp"
#include "explab/reference_table.hpp"
#include "explab/report_io.hpp"
#include "explab/residue_set.hpp"
#include "explab/table_verify.hpp"
#include "explab/theory.hpp"
#include "explab/witness_cache.hpp"

#ifndef EXPLAB_DEFAULT_TABLE_CSV
#define EXPLAB_DEFAULT_TABLE_CSV "data/exponent_table.csv"
#endif

namespace {

using namespace explab;

unsigned default_threads() {
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

struct options {
  std::uint32_t n = 0;
  std::uint32_t n_min = 0;
  std::uint32_t n_max = 0;
  std::uint32_t scan_min = 0;
  std::uint32_t scan_max = 0;
  std::uint32_t k = 0;
  std::string set_literal;
  std::string mode;
  std::uint64_t budget = kDefaultBudget;
  std::uint64_t seed = kDefaultSeed;
  unsigned threads = default_threads();
  std::uint32_t cap = kDefaultExhaustiveCap;
  std::string cache_path;
  std::string format = "text";
  std::string table_path = EXPLAB_DEFAULT_TABLE_CSV;
  bool deep = false;
};

OutputFormat format_of(const options& o) {
  const auto f = parse_output_format(o.format);
  if (!f) throw std::invalid_argument("unknown format \"" + o.format + "\"");
  return *f;
}

std::vector<std::int64_t> parse_set_literal(const std::string& text) {
  std::vector<std::int64_t> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto stop = text.find(',', start);
    if (stop == std::string::npos) stop = text.size();
    auto a = start;
    auto b = stop;
    while (a < b && std::isspace(static_cast<unsigned char>(text[a]))) ++a;
    while (a < b && std::isspace(static_cast<unsigned char>(text[b - 1]))) --b;
    const std::string token = text.substr(a, b - a);
    std::size_t used = 0;
    std::int64_t value = 0;
    try {
      value = std::stoll(token, &used);
    } catch (const std::exception&) {
      throw std::invalid_argument("bad set literal near \"" + token + "\"");
    }
    if (used != token.size())
      throw std::invalid_argument("bad set literal near \"" + token + "\"");
    out.push_back(value);
    start = stop + 1;
  }
  return out;
}

WitnessCache load_cache(const std::string& path) {
  return path.empty() ? WitnessCache() : WitnessCache::load(path, std::cerr);
}

void append_new(const std::string& path, WitnessCache& cache,
                const WitnessRecord& rec) {
  if (path.empty()) return;
  if (cache.find(rec.modulus, rec.exponent)) return;
  WitnessCache::append(path, rec);
  cache.remember(rec);
}

int cmd_exponent(const options& o) {
  const auto fmt = format_of(o);
  const auto r = exponent(make_set(o.n, parse_set_literal(o.set_literal)));
  switch (fmt) {
    case OutputFormat::text:
      std::cout << render_text(r);
      break;
    case OutputFormat::json:
      std::cout << render_json(r);
      break;
    case OutputFormat::csv:
      throw std::invalid_argument("exponent has no csv output");
  }
  return 0;
}

int cmd_exponent_set(const options& o) {
  const auto fmt = format_of(o);
  const auto r = o.mode == "exhaustive"
                     ? enumerate_exact(o.n, o.threads, o.cap)
                     : search_exponent_set(o.n, o.budget, o.seed, o.threads);
  if (!o.cache_path.empty()) {
    auto cache = load_cache(o.cache_path);
    for (const auto& [e, w] : r.witnesses) append_new(o.cache_path, cache, w);
  }
  switch (fmt) {
    case OutputFormat::text:
      std::cout << render_text(r);
      break;
    case OutputFormat::json:
      std::cout << render_json(r);
      break;
    case OutputFormat::csv:
      std::cout << render_csv(r);
      break;
  }
  return 0;
}

int cmd_verify_table(const options& o) {
  const auto fmt = format_of(o);
  if (o.n_min < ExponentTable::kFirstRow || o.n_max > ExponentTable::kLastRow ||
      o.n_min > o.n_max)
    throw std::invalid_argument("table rows cover n in [5, 64]");
  const auto table = ExponentTable::load(o.table_path);
  const auto mode = o.mode == "exhaustive" ? VerifyMode::exhaustive
                                           : VerifyMode::search;
  const auto v = verify_table_rows(table, o.n_min, o.n_max, mode, o.budget,
                                   o.seed, o.threads, o.cap, o.deep);
  if (!o.cache_path.empty()) {
    auto cache = load_cache(o.cache_path);
    for (const auto& row : v.rows)
      for (const auto& w : row.deep_witnesses) append_new(o.cache_path, cache, w);
  }
  switch (fmt) {
    case OutputFormat::text:
      std::cout << render_text(v);
      break;
    case OutputFormat::json:
      std::cout << render_json(v);
      break;
    case OutputFormat::csv:
      throw std::invalid_argument("verify-table has no csv output");
  }
  return v.exit_code();
}

int cmd_verify_theorems(const options& o) {
  const auto cache = load_cache(o.cache_path);
  bool failed = false;
  bool inconclusive = false;

  {
    std::uint64_t sets = 0, wrong = 0;
    for (std::uint32_t n = 4; n <= 500; ++n) {
      for (const auto& c : known_constructions(n)) {
        ++sets;
        const auto r = exponent(c.set.to_set());
        if (!r.exponent || *r.exponent != c.exponent) ++wrong;
      }
    }
    if (wrong) failed = true;
    std::cout << "constructions n in [4,500]: "
              << (wrong ? "FAIL" : "pass") << " (" << sets << " sets";
    if (wrong) std::cout << ", " << wrong << " wrong";
    std::cout << ")\n";
  }

  {
    std::uint64_t pairs = 0, witnessed = 0, impossible = 0, missed = 0;
    for (std::uint32_t n = 9; n <= 100; ++n) {
      for (std::uint32_t k = 3; k <= n / 3; ++k) {
        if (!division_condition(n, k)) continue;
        ++pairs;
        const auto f = find_witness(n, k, o.budget, o.seed,
                                    o.cache_path.empty() ? nullptr : &cache,
                                    o.cap, o.threads);
        if (f.record)
          ++witnessed;
        else if (f.definitive_absence)
          ++impossible;
        else
          ++missed;
      }
    }
    if (impossible) failed = true;
    if (missed) inconclusive = true;
    std::cout << "division condition n in [9,100]: "
              << (impossible ? "FAIL"
                             : (missed ? "INCONCLUSIVE" : "pass"))
              << " (" << pairs << " pairs, " << witnessed << " witnessed";
    if (impossible) std::cout << ", " << impossible << " proved absent";
    if (missed) std::cout << ", " << missed << " not found in budget";
    std::cout << ")\n";
  }

  {
    std::uint64_t count = 0, wrong = 0;
    for (std::uint32_t n = 28; n <= 300; ++n) {
      ++count;
      if (!verify_quarter_diameter_bound(n)) ++wrong;
    }
    if (wrong) failed = true;
    std::cout << "quarter diameter bound n in [28,300]: "
              << (wrong ? "FAIL" : "pass") << " (" << count << " moduli";
    if (wrong) std::cout << ", " << wrong << " wrong";
    std::cout << ")\n";
  }

  {
    const std::uint32_t hi = std::min<std::uint32_t>(o.cap, 64);
    std::uint64_t sq_count = 0, sq_wrong = 0, gap_count = 0, gap_wrong = 0;
    for (std::uint32_t n = 2; n <= hi; ++n) {
      const auto all = enumerate_exact(n, o.threads, o.cap);
      ++sq_count;
      if (!sqrt_range_check(all)) ++sq_wrong;
      if (n >= 5) {
        ++gap_count;
        if (!verify_gaps(all).consistent) ++gap_wrong;
      }
    }
    if (sq_wrong || gap_wrong) failed = true;
    std::cout << "sqrt range n in [2," << hi << "]: "
              << (sq_wrong ? "FAIL" : "pass") << " (" << sq_count
              << " moduli)\n";
    std::cout << "gap consistency n in [5," << hi << "]: "
              << (gap_wrong ? "FAIL" : "pass") << " (" << gap_count
              << " moduli)\n";
  }

  if (failed) return 1;
  return inconclusive ? 3 : 0;
}

int cmd_conjecture_scan(const options& o) {
  const auto fmt = format_of(o);
  std::uint32_t lo = o.scan_min, hi = o.scan_max;
  if (o.n != 0) lo = hi = o.n;
  if (lo == 0 || hi == 0)
    throw std::invalid_argument("pass --n or both --min and --max");
  const auto rep = conjecture_scan(o.k, lo, hi, o.budget, o.seed);
  switch (fmt) {
    case OutputFormat::text:
      std::cout << render_text(rep);
      break;
    case OutputFormat::json:
      std::cout << render_json(rep);
      break;
    case OutputFormat::csv:
      throw std::invalid_argument("conjecture-scan has no csv output");
  }
  return 0;
}

void add_budget_flags(CLI::App* sub, options& o) {
  sub->add_option("--budget", o.budget, "random trials to spend");
  sub->add_option("--seed", o.seed, "seed for the random phase");
  sub->add_option("--threads", o.threads, "worker count")
      ->check(CLI::Range(1u, 64u));
}

void add_cache_flag(CLI::App* sub, options& o) {
  sub->add_option("--cache", o.cache_path, "witness cache file (JSON lines)")
      ->envname(kCacheEnvVar);
}

void add_format_flag(CLI::App* sub, options& o, const char* values) {
  sub->add_option("--format", o.format, values);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exponent sets of primitive circulant digraphs"};
  app.require_subcommand(1);
  options o;

  auto* exp = app.add_subcommand("exponent", "exponent of one connection set");
  exp->add_option("--n", o.n, "modulus")->required();
  exp->add_option("--set", o.set_literal, "comma-separated residues")
      ->required();
  add_format_flag(exp, o, "text|json");

  auto* eset = app.add_subcommand("exponent-set",
                                  "all exponents attained at one modulus");
  eset->add_option("--n", o.n, "modulus")->required();
  eset->add_option("--mode", o.mode, "exhaustive|search")
      ->required()
      ->check(CLI::IsMember({"exhaustive", "search"}));
  eset->add_option("--cap", o.cap, "largest modulus enumerated exhaustively");
  add_budget_flags(eset, o);
  add_cache_flag(eset, o);
  add_format_flag(eset, o, "text|json|csv");

  auto* vt = app.add_subcommand("verify-table",
                                "check computed exponent sets against the "
                                "reference table");
  vt->add_option("--min", o.n_min, "first table row")->default_val(5u);
  vt->add_option("--max", o.n_max, "last table row")->default_val(64u);
  vt->add_option("--mode", o.mode, "exhaustive|search")
      ->required()
      ->check(CLI::IsMember({"exhaustive", "search"}));
  vt->add_option("--cap", o.cap, "largest modulus enumerated exhaustively");
  vt->add_option("--table", o.table_path, "reference table csv");
  vt->add_flag("--deep", o.deep,
               "run the exact high-exponent scan at n=35");
  add_budget_flags(vt, o);
  add_cache_flag(vt, o);
  add_format_flag(vt, o, "text|json");

  auto* vth = app.add_subcommand("verify-theorems",
                                 "re-check the closed forms and certified "
                                 "gaps on fixed ranges");
  vth->add_option("--cap", o.cap, "largest modulus enumerated exhaustively");
  add_budget_flags(vth, o);
  add_cache_flag(vth, o);

  auto* scan = app.add_subcommand("conjecture-scan",
                                  "classify exponents near n/k as witnessed, "
                                  "certified-absent, or undecided");
  scan->add_option("--k", o.k, "target ratio n/k")->required();
  scan->add_option("--n", o.n, "single modulus");
  scan->add_option("--min", o.scan_min, "first modulus");
  scan->add_option("--max", o.scan_max, "last modulus");
  scan->add_option("--budget", o.budget, "random trials to spend per modulus");
  scan->add_option("--seed", o.seed, "seed for the random phase");
  add_format_flag(scan, o, "text|json");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*exp) return cmd_exponent(o);
    if (*eset) return cmd_exponent_set(o);
    if (*vt) return cmd_verify_table(o);
    if (*vth) return cmd_verify_theorems(o);
    if (*scan) return cmd_conjecture_scan(o);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::logic_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
