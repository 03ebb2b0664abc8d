// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <utility>

#include <Eigen/Dense>

#include "rcilab/philox.hpp"

namespace rcilab {

// The gap constant and the bit law take distinct forms for beta < 1 and
// beta = 1; values within 1e-9 of 1 use the beta = 1 branch.
enum class BetaRegime { below_one, equal_one };

BetaRegime classify_beta_regime(double beta);

enum class GapMode { clamped, unclamped };

// Feedback dimensioning summary for one (M, beta, rho, b) operating point.
struct FddPlan {
  double b = 0.0;        // target factor, gap = log2(b) bits
  double C = 0.0;        // tau2 = C / rho scaling constant
  double B = 0.0;        // feedback bits per user, dB-linear law (pre-rounding)
  double B_exact = 0.0;  // (M-1) log2(rho / C)
  int B_ceil = 0;
  int M = 0;
  BetaRegime regime = BetaRegime::below_one;
};

// Per-user rate gap between perfect-CSIT and distorted-CSIT deterministic
// equivalents, both at xi = optimal_regularizer(beta, rho).
double rate_gap(double beta, double rho, double tau2,
                GapMode mode = GapMode::clamped);

// C such that tau2 = C / rho keeps the high-SNR gap near log2(b) bits.
// Requires b >= 1; C(1) = 0.
double scaling_constant(BetaRegime regime, double b);

// Feedback-bit law keeping the gap near log2(b): linear in rho_dB with
// slope (M-1)/3. Requires M >= 2, b > 1.
double feedback_bits(int M, BetaRegime regime, double rho_db, double b);

// Exact variant B = (M-1) log2(rho / C) from the RVQ distortion bound.
double feedback_bits_exact(int M, BetaRegime regime, double rho_db, double b);

FddPlan make_fdd_plan(int M, double beta, double rho_db, double b);

// 2^B_bits independent unit vectors, isotropic on the complex M-sphere.
// Brute-force quantization is gated to B_bits <= 20.
struct RvqCodebook {
  int B_bits = 0;
  int M = 0;
  Eigen::MatrixXcd vectors;  // M x 2^B_bits, unit-norm columns

  static RvqCodebook generate(int M, int B_bits, const RngSpec& rng);
};

// Returns (index, sin^2 theta): the codeword maximizing |<h/||h||, c>| and
// the squared sine of the angle to it. Ties break to the lowest index.
std::pair<int, double> rvq_quantize(const Eigen::VectorXcd& h,
                                    const RvqCodebook& codebook);

}  // namespace rcilab
