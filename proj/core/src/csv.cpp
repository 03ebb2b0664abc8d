// SPDX-License-Identifier: Apache-2.0
#include "rcilab/csv.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <vector>

#include <json.hpp>

#include "rcilab/errors.hpp"

namespace rcilab {

namespace {

constexpr char kHeader[] =
    "axis,axis_value,mc_mean,mc_stderr,ci95_low,ci95_high,deq_value,deq_perfect,extra";

std::string escape_commas(const std::string& s) {
  std::string out;
  out.reserve(s.size());
  for (char ch : s) {
    if (ch == ',') out += "\\,";
    else out += ch;
  }
  return out;
}

std::string unescape_commas(const std::string& s) {
  std::string out;
  out.reserve(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '\\' && i + 1 < s.size() && s[i + 1] == ',') {
      out += ',';
      ++i;
    } else {
      out += s[i];
    }
  }
  return out;
}

// Split on unescaped commas.
std::vector<std::string> split_row(const std::string& line) {
  std::vector<std::string> cells;
  std::string cur;
  for (std::size_t i = 0; i < line.size(); ++i) {
    if (line[i] == '\\' && i + 1 < line.size() && line[i + 1] == ',') {
      cur += ',';
      ++i;
    } else if (line[i] == ',') {
      cells.push_back(cur);
      cur.clear();
    } else {
      cur += line[i];
    }
  }
  cells.push_back(cur);
  return cells;
}

double parse_cell(const std::string& cell, int line_no) {
  if (cell == "NaN") return std::numeric_limits<double>::quiet_NaN();
  try {
    std::size_t used = 0;
    const double v = std::stod(cell, &used);
    if (used != cell.size()) throw std::invalid_argument(cell);
    return v;
  } catch (const std::exception&) {
    throw ValidationError("CSV line " + std::to_string(line_no)
                          + ": bad numeric cell '" + cell + "'");
  }
}

nlohmann::json cell_json(double v) {
  if (std::isnan(v)) return nullptr;
  return v;
}

}  // namespace

std::string format_double(double v) {
  if (std::isnan(v)) return "NaN";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void emit_csv(const SweepResult& result, std::ostream& os) {
  os << "# spec: " << escape_commas(result.meta.spec_echo) << "\n";
  os << "# version: " << escape_commas(result.meta.version) << "\n";
  os << kHeader << "\n";
  for (const SweepRow& r : result.rows) {
    os << r.axis << ',' << format_double(r.axis_value) << ','
       << format_double(r.mc_mean) << ',' << format_double(r.mc_stderr) << ','
       << format_double(r.ci95_low) << ',' << format_double(r.ci95_high) << ','
       << format_double(r.deq_value) << ',' << format_double(r.deq_perfect) << ','
       << escape_commas(r.extra) << "\n";
  }
  if (!os) throw IoError("emit_csv: stream write failed");
}

void emit_csv(const SweepResult& result, const std::string& path) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw IoError("emit_csv: cannot open '" + path + "' for writing");
  emit_csv(result, f);
  f.flush();
  if (!f) throw IoError("emit_csv: write to '" + path + "' failed");
}

void emit_json(const SweepResult& result, std::ostream& os) {
  nlohmann::json j;
  j["meta"] = {{"spec", result.meta.spec_echo},
               {"version", result.meta.version}};
  j["rows"] = nlohmann::json::array();
  for (const SweepRow& r : result.rows) {
    j["rows"].push_back({{"axis", r.axis},
                         {"axis_value", r.axis_value},
                         {"mc_mean", cell_json(r.mc_mean)},
                         {"mc_stderr", cell_json(r.mc_stderr)},
                         {"ci95_low", cell_json(r.ci95_low)},
                         {"ci95_high", cell_json(r.ci95_high)},
                         {"deq_value", cell_json(r.deq_value)},
                         {"deq_perfect", cell_json(r.deq_perfect)},
                         {"extra", r.extra}});
  }
  os << j.dump(2) << "\n";
  if (!os) throw IoError("emit_json: stream write failed");
}

void emit_json(const SweepResult& result, const std::string& path) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw IoError("emit_json: cannot open '" + path + "' for writing");
  emit_json(result, f);
  f.flush();
  if (!f) throw IoError("emit_json: write to '" + path + "' failed");
}

SweepResult parse_csv(std::istream& is) {
  SweepResult result;
  std::string line;
  int line_no = 0;
  bool header_seen = false;
  while (std::getline(is, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line.rfind("# spec: ", 0) == 0) {
      result.meta.spec_echo = unescape_commas(line.substr(8));
      continue;
    }
    if (line.rfind("# version: ", 0) == 0) {
      result.meta.version = unescape_commas(line.substr(11));
      continue;
    }
    if (line[0] == '#') continue;
    if (!header_seen) {
      if (line != kHeader)
        throw ValidationError("CSV line " + std::to_string(line_no)
                              + ": unexpected header '" + line + "'");
      header_seen = true;
      continue;
    }
    const auto cells = split_row(line);
    if (cells.size() != 9)
      throw ValidationError("CSV line " + std::to_string(line_no) + ": expected 9 cells, got "
                            + std::to_string(cells.size()));
    SweepRow r;
    r.axis = cells[0];
    r.axis_value = parse_cell(cells[1], line_no);
    r.mc_mean = parse_cell(cells[2], line_no);
    r.mc_stderr = parse_cell(cells[3], line_no);
    r.ci95_low = parse_cell(cells[4], line_no);
    r.ci95_high = parse_cell(cells[5], line_no);
    r.deq_value = parse_cell(cells[6], line_no);
    r.deq_perfect = parse_cell(cells[7], line_no);
    r.extra = cells[8];
    result.rows.push_back(std::move(r));
  }
  if (!header_seen) throw ValidationError("parse_csv: no header line found");
  return result;
}

SweepResult parse_csv_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw IoError("parse_csv: cannot open '" + path + "'");
  return parse_csv(f);
}

}  // namespace rcilab
