#include "explab/report_io.hpp"

#include <cctype>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace explab {

namespace {

using ordered_json = nlohmann::ordered_json;

std::string join(const std::vector<std::uint32_t>& xs, char sep) {
  std::ostringstream os;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) os << sep;
    os << xs[i];
  }
  return os.str();
}

ordered_json witness_json(const WitnessRecord& w) {
  ordered_json j;
  j["n"] = w.modulus;
  j["exponent"] = w.exponent;
  j["witness"] = w.witness.elements;
  j["method"] = w.method;
  if (w.seed)
    j["seed"] = *w.seed;
  else
    j["seed"] = nullptr;
  return j;
}

WitnessRecord witness_from_json(const ordered_json& j) {
  WitnessRecord w;
  w.modulus = j.at("n").get<std::uint32_t>();
  w.exponent = j.at("exponent").get<std::uint32_t>();
  w.witness = GeneratorSpec(
      w.modulus, j.at("witness").get<std::vector<std::uint32_t>>());
  w.method = j.at("method").get<std::string>();
  if (!is_witness_method(w.method))
    throw std::runtime_error("unknown witness method \"" + w.method + "\"");
  if (!j.at("seed").is_null()) w.seed = j.at("seed").get<std::uint64_t>();
  return w;
}

std::string dump_doc(const ordered_json& j) { return j.dump(2) + "\n"; }

const char* row_status_name(RowStatus s) {
  switch (s) {
    case RowStatus::pass: return "PASS";
    case RowStatus::mismatch: return "MISMATCH";
    case RowStatus::inconclusive: return "INCONCLUSIVE";
  }
  throw std::logic_error("unknown row status");
}

}  // namespace

std::optional<OutputFormat> parse_output_format(std::string_view name) {
  if (name == "text") return OutputFormat::text;
  if (name == "json") return OutputFormat::json;
  if (name == "csv") return OutputFormat::csv;
  return std::nullopt;
}

std::string render_text(const ExponentResult& r) {
  if (!r.exponent) return "not primitive\n";
  return std::to_string(*r.exponent) + "\n";
}

std::string render_json(const ExponentResult& r) {
  ordered_json j;
  j["n"] = r.modulus;
  j["set"] = r.set.elements;
  j["primitive"] = r.primitive;
  if (r.exponent)
    j["exponent"] = *r.exponent;
  else
    j["exponent"] = nullptr;
  j["iterations_used"] = r.iterations_used;
  return dump_doc(j);
}

std::string render_text(const ExponentSetResult& r) {
  std::ostringstream os;
  os << join(r.exponents, ' ') << "\n";
  os << "n: " << r.modulus << "\n";
  os << "exhaustive: " << (r.exhaustive ? "yes" : "no") << "\n";
  os << "witnesses:\n";
  for (const auto& [e, w] : r.witnesses)
    os << "  " << e << ": " << w.witness.to_string() << " (" << w.method
       << ")\n";
  os << "checked: construction=" << r.counters.construction_candidates
     << " sweep=" << r.counters.sweep_candidates
     << " random=" << r.counters.random_trials
     << " exhaustive=" << r.counters.exhaustive_candidates
     << " exponent=" << r.counters.exponent_checks << "\n";
  return os.str();
}

std::string render_json(const ExponentSetResult& r) {
  ordered_json j;
  j["n"] = r.modulus;
  j["exhaustive"] = r.exhaustive;
  j["exponents"] = r.exponents;
  auto ws = ordered_json::array();
  for (const auto& [e, w] : r.witnesses) ws.push_back(witness_json(w));
  j["witnesses"] = std::move(ws);
  ordered_json c;
  c["exhaustive_candidates"] = r.counters.exhaustive_candidates;
  c["construction_candidates"] = r.counters.construction_candidates;
  c["sweep_candidates"] = r.counters.sweep_candidates;
  c["random_trials"] = r.counters.random_trials;
  c["exponent_checks"] = r.counters.exponent_checks;
  j["counters"] = std::move(c);
  return dump_doc(j);
}

ExponentSetResult parse_exponent_set_json(const std::string& text) {
  const auto j = ordered_json::parse(text);
  ExponentSetResult r;
  r.modulus = j.at("n").get<std::uint32_t>();
  r.exhaustive = j.at("exhaustive").get<bool>();
  r.exponents = j.at("exponents").get<std::vector<std::uint32_t>>();
  for (const auto& wj : j.at("witnesses")) {
    auto w = witness_from_json(wj);
    const auto e = w.exponent;
    r.witnesses.emplace(e, std::move(w));
  }
  const auto& c = j.at("counters");
  r.counters.exhaustive_candidates =
      c.at("exhaustive_candidates").get<std::uint64_t>();
  r.counters.construction_candidates =
      c.at("construction_candidates").get<std::uint64_t>();
  r.counters.sweep_candidates = c.at("sweep_candidates").get<std::uint64_t>();
  r.counters.random_trials = c.at("random_trials").get<std::uint64_t>();
  r.counters.exponent_checks = c.at("exponent_checks").get<std::uint64_t>();
  return r;
}

std::string render_csv(const ExponentSetResult& r) {
  std::vector<CsvWitnessRow> rows;
  rows.reserve(r.witnesses.size());
  for (const auto& [e, w] : r.witnesses)
    rows.push_back({w.modulus, e, w.witness.elements, w.method});
  return render_csv(rows);
}

std::string render_csv(const std::vector<CsvWitnessRow>& rows) {
  std::ostringstream os;
  os << "n,exponent,witness,method\n";
  for (const auto& row : rows)
    os << row.modulus << ',' << row.exponent << ',' << join(row.witness, '-')
       << ',' << row.method << "\n";
  return os.str();
}

std::vector<CsvWitnessRow> parse_witness_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line != "n,exponent,witness,method")
    throw std::runtime_error("witness csv: bad header");
  std::vector<CsvWitnessRow> rows;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    const auto at = [&](const std::string& why) {
      return std::runtime_error("witness csv line " + std::to_string(lineno) +
                                ": " + why);
    };
    std::vector<std::string> fields;
    std::size_t start = 0;
    for (;;) {
      const auto comma = line.find(',', start);
      fields.push_back(line.substr(start, comma - start));
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
    if (fields.size() != 4) throw at("expected 4 fields");
    CsvWitnessRow row;
    try {
      row.modulus = static_cast<std::uint32_t>(std::stoul(fields[0]));
      row.exponent = static_cast<std::uint32_t>(std::stoul(fields[1]));
      std::istringstream ws(fields[2]);
      std::string tok;
      while (std::getline(ws, tok, '-'))
        row.witness.push_back(static_cast<std::uint32_t>(std::stoul(tok)));
    } catch (const std::exception&) {
      throw at("bad number");
    }
    row.method = fields[3];
    if (!is_witness_method(row.method)) throw at("unknown method");
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string render_text(const GapReport& r) {
  std::ostringstream os;
  os << "n=" << r.modulus << " consistent=" << (r.consistent ? "yes" : "no")
     << " absences=" << (r.absences_definitive ? "definitive" : "budget-limited")
     << "\n";
  os << "certified:";
  if (r.certified.empty()) os << " none";
  for (const auto& iv : r.certified)
    os << " [" << iv.lo << "," << iv.hi << "]=" << gap_tag_name(iv.tag);
  os << "\n";
  os << "uncertified absences: "
     << (r.uncertified_absences.empty() ? "none"
                                        : join(r.uncertified_absences, ' '))
     << "\n";
  return os.str();
}

std::string render_json(const GapReport& r) {
  ordered_json j;
  j["n"] = r.modulus;
  auto certified = ordered_json::array();
  for (const auto& iv : r.certified) {
    ordered_json c;
    c["lo"] = iv.lo;
    c["hi"] = iv.hi;
    c["tag"] = std::string(gap_tag_name(iv.tag));
    certified.push_back(std::move(c));
  }
  j["certified"] = std::move(certified);
  j["uncertified_absences"] = r.uncertified_absences;
  j["consistent"] = r.consistent;
  j["absences_definitive"] = r.absences_definitive;
  return dump_doc(j);
}

GapReport parse_gap_report_json(const std::string& text) {
  const auto j = ordered_json::parse(text);
  GapReport r;
  r.modulus = j.at("n").get<std::uint32_t>();
  for (const auto& c : j.at("certified")) {
    const auto tag = parse_gap_tag(c.at("tag").get<std::string>());
    if (!tag) throw std::runtime_error("unknown gap tag in report");
    r.certified.push_back(
        {c.at("lo").get<std::uint32_t>(), c.at("hi").get<std::uint32_t>(),
         *tag});
  }
  r.uncertified_absences =
      j.at("uncertified_absences").get<std::vector<std::uint32_t>>();
  r.consistent = j.at("consistent").get<bool>();
  r.absences_definitive = j.at("absences_definitive").get<bool>();
  return r;
}

std::string render_text(const ScanReport& r) {
  std::ostringstream os;
  os << "k=" << r.k << " budget=" << r.budget << " seed=" << r.seed << "\n";
  for (const auto& row : r.rows) {
    os << "n=" << row.modulus << " window=[" << row.lo << "," << row.hi
       << "] trials=" << row.budget_spent << "\n";
    for (const auto& e : row.entries) {
      os << "  " << e.exponent << ": " << scan_status_name(e.status);
      if (e.witness) os << " witness=" << e.witness->witness.to_string();
      os << "\n";
    }
  }
  return os.str();
}

std::string render_json(const ScanReport& r) {
  ordered_json j;
  j["k"] = r.k;
  j["budget"] = r.budget;
  j["seed"] = r.seed;
  auto rows = ordered_json::array();
  for (const auto& row : r.rows) {
    ordered_json rj;
    rj["n"] = row.modulus;
    rj["lo"] = row.lo;
    rj["hi"] = row.hi;
    rj["budget_spent"] = row.budget_spent;
    auto entries = ordered_json::array();
    for (const auto& e : row.entries) {
      ordered_json ej;
      ej["exponent"] = e.exponent;
      ej["status"] = std::string(scan_status_name(e.status));
      if (e.witness) ej["witness"] = witness_json(*e.witness);
      entries.push_back(std::move(ej));
    }
    rj["entries"] = std::move(entries);
    rows.push_back(std::move(rj));
  }
  j["rows"] = std::move(rows);
  return dump_doc(j);
}

std::string render_text(const TableVerification& r) {
  std::ostringstream os;
  for (const auto& row : r.rows) {
    os << "row " << row.modulus << ": " << row_status_name(row.status);
    if (!row.not_in_table.empty())
      os << "; computed but not in table: " << join(row.not_in_table, ' ');
    if (!row.not_computed.empty())
      os << "; in table but not computed: " << join(row.not_computed, ' ');
    if (!row.missing.empty())
      os << "; missing witnesses: " << join(row.missing, ' ');
    if (!row.contradicted.empty())
      os << "; witnesses inside certified gaps: "
         << join(row.contradicted, ' ');
    if (!row.omissions.empty())
      os << "; witnessed but not listed: " << join(row.omissions, ' ');
    if (!row.uncertified_absences.empty()) {
      os << "; uncertified: " << join(row.uncertified_absences, ' ');
      if (row.deep_ran)
        os << " (deep run certified: "
           << (row.deep_certified.empty() ? "none"
                                          : join(row.deep_certified, ' '))
           << ")";
      else if (row.modulus == 35)
        os << " (deep run available)";
    }
    os << "\n";
  }
  return os.str();
}

std::string render_json(const TableVerification& r) {
  ordered_json j;
  j["mode"] =
      r.mode == VerifyMode::exhaustive ? "exhaustive" : "search";
  auto rows = ordered_json::array();
  for (const auto& row : r.rows) {
    ordered_json rj;
    rj["n"] = row.modulus;
    std::string status = row_status_name(row.status);
    for (auto& ch : status) ch = static_cast<char>(std::tolower(ch));
    rj["status"] = status;
    rj["computed_exponents"] = row.computed.exponents;
    rj["missing"] = row.missing;
    rj["contradicted"] = row.contradicted;
    rj["omissions"] = row.omissions;
    rj["not_in_table"] = row.not_in_table;
    rj["not_computed"] = row.not_computed;
    rj["certified_absences"] = row.certified_absences;
    rj["uncertified_absences"] = row.uncertified_absences;
    rj["deep_ran"] = row.deep_ran;
    rj["deep_certified"] = row.deep_certified;
    rows.push_back(std::move(rj));
  }
  j["rows"] = std::move(rows);
  return dump_doc(j);
}

}  // namespace explab
