// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <iosfwd>
#include <string>

#include "rcilab/sweep.hpp"

namespace rcilab {

// Fixed schema:
//   axis,axis_value,mc_mean,mc_stderr,ci95_low,ci95_high,deq_value,deq_perfect,extra
// Floats are printed with 17 significant digits, absent cells as NaN. Two
// leading comment lines carry the meta (spec echo, version) with commas
// escaped as "\,". wall_time is intentionally not serialized so identical
// inputs produce byte-identical files.
void emit_csv(const SweepResult& result, std::ostream& os);
void emit_csv(const SweepResult& result, const std::string& path);

void emit_json(const SweepResult& result, std::ostream& os);
void emit_json(const SweepResult& result, const std::string& path);

// Inverse of emit_csv (meta wall_time comes back as 0).
SweepResult parse_csv(std::istream& is);
SweepResult parse_csv_file(const std::string& path);

// 17-significant-digit rendering used for every float cell; NaN -> "NaN".
std::string format_double(double v);

}  // namespace rcilab
