// SPDX-License-Identifier: Apache-2.0
#include "rcilab/config.hpp"

#include <cctype>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <istream>
#include <optional>
#include <sstream>
#include <unordered_set>

#include "rcilab/errors.hpp"
#include "rcilab/fdd.hpp"

namespace rcilab {

namespace {

[[noreturn]] void fail(int line, const std::string& what) {
  throw ValidationError("config line " + std::to_string(line) + ": " + what);
}

std::string trim(std::string_view s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

double to_double(const IniEntry& e) {
  try {
    std::size_t used = 0;
    const double v = std::stod(e.value, &used);
    if (used != e.value.size()) throw std::invalid_argument(e.value);
    return v;
  } catch (const std::exception&) {
    fail(e.line, "'" + e.key + "' expects a number, got '" + e.value + "'");
  }
}

int to_int(const IniEntry& e) {
  const double v = to_double(e);
  const double r = std::nearbyint(v);
  if (std::abs(v - r) > 1e-9 || std::abs(r) > 2147483647.0)
    fail(e.line, "'" + e.key + "' expects an integer, got '" + e.value + "'");
  return static_cast<int>(r);
}

std::uint64_t to_u64(const IniEntry& e) {
  try {
    std::size_t used = 0;
    const unsigned long long v = std::stoull(e.value, &used);
    if (used != e.value.size()) throw std::invalid_argument(e.value);
    return v;
  } catch (const std::exception&) {
    fail(e.line, "'" + e.key + "' expects an unsigned integer, got '" + e.value + "'");
  }
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream iss(s);
  while (std::getline(iss, cur, ',')) {
    cur = trim(cur);
    if (!cur.empty()) out.push_back(cur);
  }
  return out;
}

std::vector<double> to_double_list(const IniEntry& e) {
  std::vector<double> out;
  for (const std::string& tok : split_list(e.value)) {
    try {
      std::size_t used = 0;
      const double v = std::stod(tok, &used);
      if (used != tok.size()) throw std::invalid_argument(tok);
      out.push_back(v);
    } catch (const std::exception&) {
      fail(e.line, "'" + e.key + "' has a non-numeric element '" + tok + "'");
    }
  }
  if (out.empty()) fail(e.line, "'" + e.key + "' is empty");
  return out;
}

SweepAxis axis_from_string(const IniEntry& e) {
  if (e.value == "M") return SweepAxis::M;
  if (e.value == "rho_db") return SweepAxis::rho_db;
  if (e.value == "T_t") return SweepAxis::T_t;
  if (e.value == "B_bits") return SweepAxis::B_bits;
  if (e.value == "tau") return SweepAxis::tau;
  fail(e.line, "unknown axis '" + e.value
                   + "' (expected M, rho_db, T_t, B_bits or tau)");
}

std::set<SweepOutput> outputs_from_string(const IniEntry& e) {
  std::set<SweepOutput> out;
  for (const std::string& tok : split_list(e.value)) {
    if (tok == "mc_rate") out.insert(SweepOutput::mc_rate);
    else if (tok == "deq_rate") out.insert(SweepOutput::deq_rate);
    else if (tok == "deq_perfect") out.insert(SweepOutput::deq_perfect);
    else if (tok == "gap") out.insert(SweepOutput::gap);
    else if (tok == "sinr_means") out.insert(SweepOutput::sinr_means);
    else fail(e.line, "unknown output '" + tok + "'");
  }
  if (out.empty()) fail(e.line, "'outputs' is empty");
  return out;
}

// Tracks which keys a section handler consumed so leftovers can be reported
// with their line numbers.
class KeySet {
 public:
  explicit KeySet(const IniSection& sec) : sec_(sec) {}

  const IniEntry* take(std::string_view key) {
    const IniEntry* found = nullptr;
    for (const IniEntry& e : sec_.entries) {
      if (e.key == key) {
        if (found) fail(e.line, "duplicate key '" + e.key + "'");
        found = &e;
      }
    }
    if (found) used_.insert(found->key);
    return found;
  }

  const IniEntry& require(std::string_view key) {
    const IniEntry* e = take(key);
    if (!e)
      fail(sec_.line, "[" + sec_.name + "] is missing required key '"
                          + std::string(key) + "'");
    return *e;
  }

  void reject_unknown() const {
    for (const IniEntry& e : sec_.entries)
      if (!used_.count(e.key))
        fail(e.line, "unknown key '" + e.key + "' in [" + sec_.name + "]");
  }

 private:
  const IniSection& sec_;
  std::unordered_set<std::string> used_;
};

}  // namespace

const IniSection* IniDocument::find(std::string_view name) const {
  for (const IniSection& s : sections)
    if (s.name == name) return &s;
  return nullptr;
}

IniDocument parse_ini(std::istream& is) {
  IniDocument doc;
  std::string raw;
  int line_no = 0;
  while (std::getline(is, raw)) {
    ++line_no;
    const std::size_t cut = raw.find_first_of("#;");
    if (cut != std::string::npos) raw.erase(cut);
    const std::string line = trim(raw);
    if (line.empty()) continue;

    if (line.front() == '[') {
      if (line.back() != ']') fail(line_no, "unterminated section header");
      const std::string name = trim(std::string_view(line).substr(1, line.size() - 2));
      if (name.empty()) fail(line_no, "empty section name");
      if (doc.find(name)) fail(line_no, "duplicate section [" + name + "]");
      doc.sections.push_back({name, line_no, {}});
      continue;
    }

    const std::size_t eq = line.find('=');
    if (eq == std::string::npos) fail(line_no, "expected 'key = value'");
    IniEntry entry;
    entry.key = trim(std::string_view(line).substr(0, eq));
    entry.value = trim(std::string_view(line).substr(eq + 1));
    entry.line = line_no;
    if (entry.key.empty()) fail(line_no, "empty key");
    if (entry.value.empty()) fail(line_no, "empty value for '" + entry.key + "'");
    if (doc.sections.empty())
      fail(line_no, "key '" + entry.key + "' appears before any [section]");
    doc.sections.back().entries.push_back(std::move(entry));
  }
  return doc;
}

IniDocument parse_ini_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw IoError("cannot open config '" + path + "'");
  return parse_ini(f);
}

SweepSpec sweep_spec_from_ini(const IniDocument& doc) {
  static const std::unordered_set<std::string> known{"sweep", "fixed", "tdd", "fdd"};
  for (const IniSection& s : doc.sections)
    if (!known.count(s.name)) fail(s.line, "unknown section [" + s.name + "]");

  const IniSection* sweep = doc.find("sweep");
  const IniSection* fixed = doc.find("fixed");
  if (!sweep) throw ValidationError("config: missing [sweep] section");
  if (!fixed) throw ValidationError("config: missing [fixed] section");

  SweepSpec spec;

  {
    KeySet keys(*sweep);
    spec.axis = axis_from_string(keys.require("axis"));
    spec.values = to_double_list(keys.require("values"));
    if (const IniEntry* e = keys.take("trials")) spec.trials = to_int(*e);
    if (const IniEntry* e = keys.take("seed")) spec.master_seed = to_u64(*e);
    if (const IniEntry* e = keys.take("threads")) spec.threads = to_int(*e);
    if (const IniEntry* e = keys.take("outputs"))
      spec.outputs = outputs_from_string(*e);
    keys.reject_unknown();
  }

  {
    KeySet keys(*fixed);
    const int M = to_int(keys.require("M"));
    const int K = to_int(keys.require("K"));
    const double rho_db = to_double(keys.require("rho_db"));
    double tau2 = 0.0;
    if (const IniEntry* e = keys.take("tau2")) tau2 = to_double(*e);
    keys.reject_unknown();
    spec.fixed = SystemConfig::make(M, K, std::pow(10.0, rho_db / 10.0), tau2);
  }

  if (const IniSection* tdd = doc.find("tdd")) {
    KeySet keys(*tdd);
    const int T = to_int(keys.require("T"));
    const double c = to_double(keys.require("c"));
    keys.reject_unknown();
    spec.tdd = TddConfig::make(T, spec.fixed.K, spec.fixed.beta, spec.fixed.rho, c);
  }

  if (const IniSection* fdd = doc.find("fdd")) {
    KeySet keys(*fdd);
    spec.fdd_b = to_double(keys.require("b"));
    keys.reject_unknown();
    if (*spec.fdd_b < 1.0)
      fail(fdd->line, "[fdd] b must be >= 1");
  }

  spec.validate();
  return spec;
}

SweepSpec load_sweep_spec(const std::string& path) {
  return sweep_spec_from_ini(parse_ini_file(path));
}

}  // namespace rcilab
