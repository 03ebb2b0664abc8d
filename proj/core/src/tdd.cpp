// SPDX-License-Identifier: Apache-2.0
#include "rcilab/tdd.hpp"

#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "rcilab/asymptotics.hpp"
#include "rcilab/cubic.hpp"
#include "rcilab/errors.hpp"
#include "rcilab/fdd.hpp"
#include "rcilab/precoder.hpp"

namespace rcilab {

TddConfig TddConfig::make(int T, int K, double beta, double rho, double c) {
  if (T < 1) throw ValidationError("TddConfig: T must be >= 1");
  if (K < 1) throw ValidationError("TddConfig: K must be >= 1");
  if (T - K < 2)
    throw ValidationError("TddConfig: need T - K >= 2 for an admissible K < T_t < T");
  if (!(beta > 0.0 && beta <= 1.0))
    throw ValidationError("TddConfig: requires 0 < beta <= 1, got " + std::to_string(beta));
  if (!(rho > 0.0)) throw ValidationError("TddConfig: rho must be > 0");
  if (!(c > 0.0)) throw ValidationError("TddConfig: c must be > 0");
  TddConfig cfg;
  cfg.T = T;
  cfg.K = K;
  cfg.beta = beta;
  cfg.rho = rho;
  cfg.c = c;
  cfg.rho_ul = rho / c;
  return cfg;
}

double tdd_csit_error(double T_t, double rho_ul) {
  if (!(T_t > 0.0)) throw ValidationError("tdd_csit_error: T_t must be > 0");
  if (!(rho_ul > 0.0)) throw ValidationError("tdd_csit_error: rho_ul must be > 0");
  return 1.0 / (1.0 + T_t * rho_ul);
}

double tdd_secrecy_rate(const TddConfig& cfg, double T_t) {
  if (!(T_t > 0.0 && T_t <= static_cast<double>(cfg.T)))
    throw ValidationError("tdd_secrecy_rate: T_t = " + std::to_string(T_t)
                          + " outside (0, T = " + std::to_string(cfg.T) + "]");
  const double prelog = (static_cast<double>(cfg.T) - T_t) / static_cast<double>(cfg.T);
  if (prelog == 0.0) return 0.0;
  const double tau2 = tdd_csit_error(T_t, cfg.rho_ul);
  const double xi = optimal_regularizer(cfg.beta, cfg.rho);
  const auto pt = secrecy_rate_deq_point(cfg.beta, cfg.rho, tau2, xi);
  return prelog * static_cast<double>(cfg.K) * pt.rate_per_user;
}

namespace {

double q_constant(const TddConfig& cfg, QReference qref) {
  const double rho_q = qref == QReference::operating_snr ? cfg.rho : 1.0e4;
  const double rbar_sum = static_cast<double>(cfg.K)
                          * secrecy_rate_deq_perfect(cfg.beta, rho_q);
  return -rbar_sum * std::log(2.0);
}

}  // namespace

double solve_training_cubic(const TddConfig& cfg, QReference qref) {
  const double q = q_constant(cfg, qref);
  const double c = cfg.c;
  const double K = static_cast<double>(cfg.K);
  const double T = static_cast<double>(cfg.T);

  double a3, a2, a1, a0;
  if (classify_beta_regime(cfg.beta) == BetaRegime::below_one) {
    a3 = q;
    a2 = c * q - K * c;
    a1 = c * c * q + K * c * T - 2.0 * K * c * c;
    a0 = 2.0 * K * c * c * T;
  } else {
    a3 = 4.0 * q;
    a2 = 4.0 * c * q - 4.0 * K * c;
    a1 = 3.0 * c * c * q + 4.0 * K * c * T - 6.0 * K * c * c;
    a0 = 6.0 * K * T * c * c;
  }

  const CubicRoots roots = solve_cubic_real(a3, a2, a1, a0);
  std::vector<double> in_range;
  for (int i = 0; i < roots.count; ++i) {
    const double r = roots.roots[i];
    if (r > K && r < T) in_range.push_back(r);
  }
  if (in_range.empty()) {
    std::string msg = "solve_training_cubic: no real root in (K, T); roots:";
    for (int i = 0; i < roots.count; ++i)
      msg += " " + std::to_string(roots.roots[i]);
    throw NumericError(msg);
  }
  if (in_range.size() == 1) return in_range.front();

  double best = in_range.front();
  double best_rate = tdd_secrecy_rate(cfg, best);
  for (std::size_t i = 1; i < in_range.size(); ++i) {
    const double rate = tdd_secrecy_rate(cfg, in_range[i]);
    if (rate > best_rate) {
      best_rate = rate;
      best = in_range[i];
    }
  }
  return best;
}

TrainingSolution optimal_training_grid(const TddConfig& cfg, QReference qref) {
  TrainingSolution sol;
  sol.q = q_constant(cfg, qref);

  int best_t = cfg.K + 1;
  double best_rate = -1.0;
  for (int t = cfg.K + 1; t <= cfg.T - 1; ++t) {
    const double rate = tdd_secrecy_rate(cfg, static_cast<double>(t));
    if (rate > best_rate) {  // strict: ties keep the smaller T_t
      best_rate = rate;
      best_t = t;
    }
  }
  sol.t_opt_grid = best_t;
  sol.rate_at_grid_opt = best_rate;

  try {
    sol.t_opt_cubic = solve_training_cubic(cfg, qref);
  } catch (const NumericError&) {
    sol.t_opt_cubic = std::numeric_limits<double>::quiet_NaN();
  }
  return sol;
}

}  // namespace rcilab
