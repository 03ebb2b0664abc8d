// SPDX-License-Identifier: Apache-2.0
#pragma once

namespace rcilab {

// TDD scenario: coherence interval T split into T_t uplink training uses and
// T - T_t downlink data uses. c = rho / rho_ul.
struct TddConfig {
  int T = 0;
  double rho_ul = 0.0;
  double c = 0.0;
  int K = 0;
  double beta = 0.0;  // must be <= 1 for the training cubic to apply
  double rho = 0.0;

  // rho_ul is derived as rho / c. Requires T - K >= 2 so that an admissible
  // integer training length K < T_t < T exists.
  static TddConfig make(int T, int K, double beta, double rho, double c);
};

// Reference SNR for the q constant of the training cubic: the operating rho
// (default) or a fixed 40 dB high-SNR point.
enum class QReference { operating_snr, fixed_40db };

// Result of the brute-force training search plus the cubic prediction.
// t_opt_cubic is NaN if the cubic has no root in (K, T).
struct TrainingSolution {
  double t_opt_cubic = 0.0;
  int t_opt_grid = 0;
  double rate_at_grid_opt = 0.0;
  double q = 0.0;  // -Rbar_s * ln 2
};

// tau^2 = 1 / (1 + T_t * rho_ul).
double tdd_csit_error(double T_t, double rho_ul);

// Prelog-weighted secrecy sum-rate (T - T_t)/T * K * [deq bracket] at the
// training-induced tau^2, with xi from the perfect-CSIT optimizer at
// (beta, rho). Accepts 0 < T_t <= T; T_t = T gives exactly 0.
double tdd_secrecy_rate(const TddConfig& cfg, double T_t);

// High-SNR training cubic: the real root in (K, T); with several in range,
// the one maximizing tdd_secrecy_rate. Throws NumericError (listing all
// roots) when none lies in range.
double solve_training_cubic(const TddConfig& cfg,
                            QReference qref = QReference::operating_snr);

// Exhaustive integer search over T_t in (K, T), ties toward smaller T_t,
// packaged with the cubic prediction for comparison.
TrainingSolution optimal_training_grid(const TddConfig& cfg,
                                       QReference qref = QReference::operating_snr);

}  // namespace rcilab
