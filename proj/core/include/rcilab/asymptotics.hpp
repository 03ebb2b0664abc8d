// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "rcilab/channel.hpp"

namespace rcilab {

// Deterministic-equivalent quantities at one (beta, rho, tau2) operating
// point. When the beta > 1 high-SNR breakdown is hit (see secrecy_rate_deq),
// g and the SINR fields are NaN and rate_per_user is 0.
struct LargeSystemPoint {
  double beta = 0.0;
  double rho = 0.0;
  double tau2 = 0.0;
  double xi = 0.0;
  double g = 0.0;
  double rho_tilde = 0.0;
  double xi_tilde = 0.0;
  double sinr_intended_deq = 0.0;
  double sinr_eve_deq = 0.0;
  double rate_per_user = 0.0;  // bits/s/Hz, clamped at zero
};

// g(beta, xi) = (1/2)[sgn(xi) sqrt((1-beta)^2/xi^2 + 2(1+beta)/xi + 1)
//               + (1-beta)/xi - 1].
// Evaluated in a cancellation-free arrangement (see implementation).
// Requires beta >= 0 and xi != 0; throws DomainError when the radicand is
// negative. For xi > 0 satisfies xi*g = 1 - beta*g/(1+g).
double g_function(double beta, double xi);

// Deterministic equivalent of the intended-user SINR under CSIT error tau2,
// with the rho_tilde / xi_tilde substitutions. Requires tau2 < 1.
double deq_sinr_intended(double beta, double rho, double tau2, double xi);

// Deterministic equivalent of the eavesdropper SINR,
// rho [tau2 + (1 - tau2) / (1 + g)^2]. Accepts tau2 = 1 (returns rho).
double deq_sinr_eve(double beta, double rho, double tau2, double xi);

// Full deterministic-equivalent point under CSIT error (closed form):
// rate_per_user = [log2((1+SINR)/(1+SINR_ev))]^+, sum rate is
// K * rate_per_user. Requires cfg.tau2 < 1. For beta > 1 inputs where the
// g radicand turns negative (the high-SNR zero-rate region) returns the
// zero-rate point instead of throwing; the strict per-quantity ops above
// still throw there.
LargeSystemPoint secrecy_rate_deq(const SystemConfig& cfg, double xi);

// Same evaluation addressed by the ratio beta directly.
LargeSystemPoint secrecy_rate_deq_point(double beta, double rho, double tau2,
                                        double xi);

// Perfect-CSIT closed form (its own textual evaluation, not tau2 = 0 of the
// general path) with xi from optimal_regularizer. Returns bits/s/Hz per user.
double secrecy_rate_deq_perfect(double beta, double rho);

// Unclamped per-user log-ratio, used by the FDD gap analysis.
double deq_rate_per_user_unclamped(double beta, double rho, double tau2,
                                   double xi);

}  // namespace rcilab
