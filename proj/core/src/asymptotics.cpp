// SPDX-License-Identifier: Apache-2.0
#include "rcilab/asymptotics.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "rcilab/errors.hpp"
#include "rcilab/precoder.hpp"

namespace rcilab {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

double g_radicand(double beta, double xi) {
  const double t = (1.0 - beta) / xi;
  return t * t + 2.0 * (1.0 + beta) / xi + 1.0;
}

void validate_beta_rho(double beta, double rho, const char* who) {
  if (!(beta > 0.0)) throw ValidationError(std::string(who) + ": beta must be > 0");
  if (!(rho > 0.0)) throw ValidationError(std::string(who) + ": rho must be > 0");
}

}  // namespace

double g_function(double beta, double xi) {
  if (!(beta >= 0.0)) throw ValidationError("g_function: beta must be >= 0");
  if (xi == 0.0) throw DomainError("g_function: xi = 0 is outside the domain");
  const double rad = g_radicand(beta, xi);
  if (rad < 0.0)
    throw DomainError("g_function: negative radicand at beta = " + std::to_string(beta)
                      + ", xi = " + std::to_string(xi));

  const double t = (1.0 - beta) / xi;
  const double s = (xi > 0.0 ? 1.0 : -1.0) * std::sqrt(rad);
  double sum;  // s + t
  if ((s > 0.0) == (t > 0.0) || t == 0.0) {
    sum = s + t;
  } else {
    // Opposite signs cancel catastrophically (e.g. beta > 1, xi -> 0+, where
    // s ~ -t). Rationalize with s^2 - t^2 = 2(1+beta)/xi + 1.
    sum = (2.0 * (1.0 + beta) / xi + 1.0) / (s - t);
  }
  return 0.5 * (sum - 1.0);
}

double deq_sinr_intended(double beta, double rho, double tau2, double xi) {
  validate_beta_rho(beta, rho, "deq_sinr_intended");
  if (!(tau2 >= 0.0 && tau2 < 1.0))
    throw DomainError("deq_sinr_intended: requires 0 <= tau2 < 1, got " + std::to_string(tau2));
  const double rho_t = rho * (1.0 - tau2) / (rho * tau2 + 1.0);
  const double xi_t = xi / (1.0 - tau2);
  const double g = g_function(beta, xi_t);
  const double opg2 = (1.0 + g) * (1.0 + g);
  return g * (rho_t + (xi_t * rho_t / beta) * opg2) / (rho_t + opg2);
}

double deq_sinr_eve(double beta, double rho, double tau2, double xi) {
  validate_beta_rho(beta, rho, "deq_sinr_eve");
  if (!(tau2 >= 0.0 && tau2 <= 1.0))
    throw DomainError("deq_sinr_eve: requires 0 <= tau2 <= 1, got " + std::to_string(tau2));
  if (tau2 == 1.0) return rho;  // precoder carries no information about H
  const double xi_t = xi / (1.0 - tau2);
  const double g = g_function(beta, xi_t);
  const double opg2 = (1.0 + g) * (1.0 + g);
  return rho * (tau2 + (1.0 - tau2) / opg2);
}

LargeSystemPoint secrecy_rate_deq_point(double beta, double rho, double tau2,
                                        double xi) {
  if (!(tau2 >= 0.0 && tau2 < 1.0))
    throw DomainError("secrecy_rate_deq: requires 0 <= tau2 < 1 (xi_tilde diverges)");
  validate_beta_rho(beta, rho, "secrecy_rate_deq");

  LargeSystemPoint pt;
  pt.beta = beta;
  pt.rho = rho;
  pt.tau2 = tau2;
  pt.xi = xi;
  pt.rho_tilde = rho * (1.0 - tau2) / (rho * tau2 + 1.0);
  pt.xi_tilde = xi / (1.0 - tau2);

  if (pt.xi_tilde != 0.0 && g_radicand(beta, pt.xi_tilde) < 0.0) {
    if (beta > 1.0) {
      // beta > 1 high-SNR breakdown: no real fixed point for g. The clamped
      // rate is already zero at the boundary of this region and finite-size
      // Monte Carlo agrees, so extend by the zero-rate point rather than
      // failing the caller.
      pt.g = kNaN;
      pt.sinr_intended_deq = kNaN;
      pt.sinr_eve_deq = kNaN;
      pt.rate_per_user = 0.0;
      return pt;
    }
    throw DomainError("secrecy_rate_deq: negative g radicand at beta = "
                      + std::to_string(beta) + ", xi_tilde = "
                      + std::to_string(pt.xi_tilde));
  }

  pt.g = g_function(beta, pt.xi_tilde);
  pt.sinr_intended_deq = deq_sinr_intended(beta, rho, tau2, xi);
  pt.sinr_eve_deq = deq_sinr_eve(beta, rho, tau2, xi);
  const double diff = std::log2(1.0 + pt.sinr_intended_deq)
                      - std::log2(1.0 + pt.sinr_eve_deq);
  pt.rate_per_user = diff > 0.0 ? diff : 0.0;
  return pt;
}

LargeSystemPoint secrecy_rate_deq(const SystemConfig& cfg, double xi) {
  return secrecy_rate_deq_point(cfg.beta, cfg.rho, cfg.tau2, xi);
}

double secrecy_rate_deq_perfect(double beta, double rho) {
  validate_beta_rho(beta, rho, "secrecy_rate_deq_perfect");
  const double xi = optimal_regularizer(beta, rho);
  const double g = g_function(beta, xi);
  const double opg2 = (1.0 + g) * (1.0 + g);
  const double sinr = g * (rho + (rho * xi / beta) * opg2) / (rho + opg2);
  const double sinr_ev = rho / opg2;
  const double diff = std::log2(1.0 + sinr) - std::log2(1.0 + sinr_ev);
  return diff > 0.0 ? diff : 0.0;
}

double deq_rate_per_user_unclamped(double beta, double rho, double tau2,
                                   double xi) {
  const double s_int = deq_sinr_intended(beta, rho, tau2, xi);
  const double s_eve = deq_sinr_eve(beta, rho, tau2, xi);
  return std::log2(1.0 + s_int) - std::log2(1.0 + s_eve);
}

}  // namespace rcilab
