// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "rcilab/channel.hpp"
#include "rcilab/tdd.hpp"

namespace rcilab {

enum class SweepAxis { M, rho_db, T_t, B_bits, tau };

enum class SweepOutput { mc_rate, deq_rate, deq_perfect, gap, sinr_means };

const char* to_string(SweepAxis axis);
const char* to_string(SweepOutput output);

// One generic sweep: a single axis, everything else pinned by `fixed` (plus
// the optional TDD/FDD blocks that some axes need).
struct SweepSpec {
  SweepAxis axis = SweepAxis::rho_db;
  std::vector<double> values;       // strictly increasing, nonempty
  SystemConfig fixed;
  std::optional<TddConfig> tdd;     // required for axis = T_t
  std::optional<double> fdd_b;      // tau2 = C/rho policy when set
  int trials = 1;
  std::uint64_t master_seed = 0;
  std::set<SweepOutput> outputs{SweepOutput::mc_rate, SweepOutput::deq_rate};
  int threads = 0;                  // 0 = hardware concurrency

  void validate() const;            // throws ValidationError
};

// One CSV row. Cells that do not apply hold quiet NaN; `extra` carries
// semicolon-separated key=value annotations (and error=... for failed rows).
struct SweepRow {
  std::string axis;
  double axis_value = 0.0;
  double mc_mean;
  double mc_stderr;
  double ci95_low;
  double ci95_high;
  double deq_value;
  double deq_perfect;
  std::string extra;

  SweepRow();
};

struct SweepMeta {
  std::string spec_echo;      // one-line echo of the originating spec
  std::string version;        // library version string
  double wall_time_sec = 0.0; // not serialized: CSV output is byte-stable
};

struct SweepResult {
  std::vector<SweepRow> rows;
  SweepMeta meta;
};

// Ergodic Monte Carlo of the finite-size secrecy sum-rate: trials draws of
// the CSIT pair (stream_id = trial index), precoder at xi from the
// perfect-CSIT optimizer, deterministic mean regardless of thread count.
// Returns (mean, std_error) of the per-realization sum rate.
std::pair<double, double> ergodic_secrecy_rate_mc(const SystemConfig& cfg,
                                                  int trials,
                                                  std::uint64_t master_seed,
                                                  int threads = 0);

SweepResult run_sweep(const SweepSpec& spec);

// Figure recipes. Trial counts default to the acceptance operating points.
SweepResult recipe_fig1(int trials, std::uint64_t master_seed, int threads = 0);
SweepResult recipe_fig2(int trials, std::uint64_t master_seed, int threads = 0);
SweepResult recipe_fig3();

const char* version_string();

}  // namespace rcilab
