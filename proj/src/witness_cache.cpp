#include "explab/witness_cache.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

#include "explab/exponent.hpp"

namespace explab {

namespace {

bool is_blank(const std::string& line) {
  return line.find_first_not_of(" \t\r") == std::string::npos;
}

}  // namespace

WitnessCache WitnessCache::load(const std::string& path,
                                std::ostream& warnings) {
  std::ifstream in(path);
  if (!in) return {};  // a missing cache file is an empty cache
  return parse(in, warnings);
}

WitnessCache WitnessCache::parse(std::istream& in, std::ostream& warnings) {
  WitnessCache cache;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (is_blank(line)) continue;
    std::string error;
    auto rec = deserialize(line, &error);
    if (!rec) {
      warnings << "witness cache line " << lineno << ": " << error << "\n";
      continue;
    }
    const auto check = exponent(rec->witness.to_set());
    if (!check.exponent || *check.exponent != rec->exponent) {
      warnings << "witness cache line " << lineno
               << ": witness does not have the claimed exponent\n";
      continue;
    }
    cache.remember(*rec);
  }
  return cache;
}

const WitnessRecord* WitnessCache::find(std::uint32_t n,
                                        std::uint32_t e) const {
  const auto it = records_.find({n, e});
  return it == records_.end() ? nullptr : &it->second;
}

void WitnessCache::remember(const WitnessRecord& rec) {
  records_.emplace(std::make_pair(rec.modulus, rec.exponent), rec);
}

void WitnessCache::append(const std::string& path, const WitnessRecord& rec) {
  std::ofstream out(path, std::ios::app);
  if (!out)
    throw std::runtime_error("cannot open witness cache for append: " + path);
  out << serialize(rec) << "\n";
  if (!out) throw std::runtime_error("write to witness cache failed: " + path);
}

std::string WitnessCache::serialize(const WitnessRecord& rec) {
  nlohmann::ordered_json j;
  j["n"] = rec.modulus;
  j["exponent"] = rec.exponent;
  j["witness"] = rec.witness.elements;
  j["method"] = rec.method;
  if (rec.seed)
    j["seed"] = *rec.seed;
  else
    j["seed"] = nullptr;
  return j.dump();
}

std::optional<WitnessRecord> WitnessCache::deserialize(const std::string& line,
                                                       std::string* error) {
  const auto fail = [error](const std::string& why) {
    if (error) *error = why;
    return std::nullopt;
  };
  nlohmann::json j = nlohmann::json::parse(line, nullptr, false);
  if (j.is_discarded()) return fail("not valid JSON");
  if (!j.is_object()) return fail("not a JSON object");
  for (const auto& [key, _] : j.items())
    if (key != "n" && key != "exponent" && key != "witness" &&
        key != "method" && key != "seed")
      return fail("unknown field \"" + key + "\"");
  if (!j.contains("n") || !j["n"].is_number_unsigned())
    return fail("missing or non-integer \"n\"");
  if (!j.contains("exponent") || !j["exponent"].is_number_unsigned())
    return fail("missing or non-integer \"exponent\"");
  if (!j.contains("witness") || !j["witness"].is_array())
    return fail("missing or non-array \"witness\"");
  if (!j.contains("method") || !j["method"].is_string())
    return fail("missing or non-string \"method\"");
  if (!j.contains("seed") || !(j["seed"].is_null() ||
                               j["seed"].is_number_unsigned()))
    return fail("missing or invalid \"seed\"");

  const auto n64 = j["n"].get<std::uint64_t>();
  if (n64 < 2 || n64 > kMaxModulus) return fail("modulus out of range");
  const auto n = static_cast<std::uint32_t>(n64);
  const auto e64 = j["exponent"].get<std::uint64_t>();
  if (e64 < 1 || e64 >= n64) return fail("exponent out of range");

  std::vector<std::uint32_t> elems;
  for (const auto& v : j["witness"]) {
    if (!v.is_number_unsigned() || v.get<std::uint64_t>() >= n64)
      return fail("witness element out of range");
    elems.push_back(v.get<std::uint32_t>());
  }
  const auto method = j["method"].get<std::string>();
  if (!is_witness_method(method))
    return fail("unknown method \"" + method + "\"");

  WitnessRecord rec;
  rec.modulus = n;
  rec.exponent = static_cast<std::uint32_t>(e64);
  try {
    rec.witness = GeneratorSpec(n, std::move(elems));
  } catch (const std::invalid_argument& ex) {
    return fail(ex.what());
  }
  rec.method = method;
  if (!j["seed"].is_null()) rec.seed = j["seed"].get<std::uint64_t>();
  return rec;
}

}  // namespace explab
