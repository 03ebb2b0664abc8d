// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Dense>

#include "rcilab/philox.hpp"

namespace rcilab {

// Immutable scenario description. beta is stored as the exact quotient K/M.
struct SystemConfig {
  int M = 0;           // transmit antennas
  int K = 0;           // single-antenna users
  double rho = 0.0;    // downlink SNR, linear
  double tau2 = 0.0;   // CSIT error variance in [0,1]
  double beta = 0.0;   // K/M, derived

  // Validates and derives beta; throws ValidationError on bad input.
  static SystemConfig make(int M, int K, double rho, double tau2);
};

// Joint draw of the true channel and its CSIT estimate, H = Hhat + E.
struct ChannelPair {
  Eigen::MatrixXcd H;
  Eigen::MatrixXcd Hhat;
  Eigen::MatrixXcd E;
};

// K x M matrix with i.i.d. CN(0,1) entries; deterministic given rng.
Eigen::MatrixXcd sample_channel(const SystemConfig& cfg, const RngSpec& rng);

// Hhat ~ CN(0, 1-tau2), E ~ CN(0, tau2) independent, H = Hhat + E exactly.
ChannelPair sample_csit_pair(const SystemConfig& cfg, const RngSpec& rng);

}  // namespace rcilab
