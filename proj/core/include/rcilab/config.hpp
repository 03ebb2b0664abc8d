// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "rcilab/sweep.hpp"

namespace rcilab {

// Minimal INI reader: [section] headers, key = value lines, '#' and ';'
// comments (full-line or trailing). Keys are only legal inside a section.
// All diagnostics are ValidationError carrying the 1-based line number.
struct IniEntry {
  std::string key;
  std::string value;
  int line = 0;
};

struct IniSection {
  std::string name;
  int line = 0;
  std::vector<IniEntry> entries;
};

struct IniDocument {
  std::vector<IniSection> sections;

  const IniSection* find(std::string_view name) const;
};

IniDocument parse_ini(std::istream& is);
IniDocument parse_ini_file(const std::string& path);

// Maps an IniDocument onto a SweepSpec. Recognized sections / keys:
//   [sweep]  axis, values, trials, seed, threads, outputs
//   [fixed]  M, K, rho_db, tau2
//   [tdd]    T, c            (required when axis = T_t)
//   [fdd]    b               (enables the tau2 = C/rho policy)
// Any other section or key is an error; so are duplicates. The result has
// already passed SweepSpec::validate().
SweepSpec sweep_spec_from_ini(const IniDocument& doc);

SweepSpec load_sweep_spec(const std::string& path);

}  // namespace rcilab
