// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Dense>

namespace rcilab {

// RCI precoding matrix W (columns w_k, already scaled by 1/sqrt(gamma)) with
// its normalization constant and regularizer. trace(W^H W) = 1.
struct Precoder {
  Eigen::MatrixXcd W;  // M x K
  double gamma = 0.0;
  double xi = 0.0;
};

// Exact finite-size SINRs and the secrecy sum-rate of one realization.
struct RatePoint {
  Eigen::VectorXd sinr_intended;  // K
  Eigen::VectorXd sinr_eve;       // K
  double secrecy_sum_rate = 0.0;  // bits/s/Hz, per-user clamped sum
};

// Closed-form regularizer maximizing the large-system perfect-CSIT secrecy
// sum-rate. Requires beta > 0, rho > 0.
double optimal_regularizer(double beta, double rho);

// W = (1/sqrt(gamma)) (Hhat^H Hhat + M xi I)^-1 Hhat^H with
// gamma = tr{Hhat (Hhat^H Hhat + M xi I)^-2 Hhat^H}. Solves the smaller of
// the M x M / K x K systems via factorization, never an explicit inverse.
// Throws SingularMatrixError if the shifted Gram matrix is not invertible and
// DegenerateInputError when Hhat = 0 (gamma = 0, e.g. tau = 1).
Precoder build_rci(const Eigen::MatrixXcd& Hhat, double xi);

// SINR_k = rho |h_k^H w_k|^2 / (1 + rho sum_{j != k} |h_k^H w_j|^2).
// k is 0-based, 0 <= k < K.
double sinr_intended(const Eigen::MatrixXcd& H, const Precoder& prec,
                     double rho, int k);

// SINR for the alliance of the other K-1 users eavesdropping on message k:
// rho ||H_k w_k||^2 with H_k = H minus row k. k is 0-based.
double sinr_eavesdropper(const Eigen::MatrixXcd& H, const Precoder& prec,
                         double rho, int k);

// R_s = sum_k [log2(1+SINR_k) - log2(1+SINR_ev,k)]^+ (clamped per user).
RatePoint secrecy_sum_rate(const Eigen::MatrixXcd& H, const Precoder& prec,
                           double rho);

}  // namespace rcilab
