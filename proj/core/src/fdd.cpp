// SPDX-License-Identifier: Apache-2.0
#include "rcilab/fdd.hpp"

#include <cmath>
#include <string>

#include "rcilab/asymptotics.hpp"
#include "rcilab/errors.hpp"
#include "rcilab/gaussian.hpp"
#include "rcilab/precoder.hpp"

namespace rcilab {

BetaRegime classify_beta_regime(double beta) {
  if (std::abs(beta - 1.0) <= 1e-9) return BetaRegime::equal_one;
  if (beta > 0.0 && beta < 1.0) return BetaRegime::below_one;
  throw ValidationError("classify_beta_regime: requires 0 < beta <= 1, got "
                        + std::to_string(beta));
}

double rate_gap(double beta, double rho, double tau2, GapMode mode) {
  if (!(beta > 0.0) || !(rho > 0.0))
    throw ValidationError("rate_gap: beta and rho must be > 0");
  if (tau2 == 0.0) return 0.0;
  const double xi = optimal_regularizer(beta, rho);
  if (mode == GapMode::unclamped) {
    const double perfect = deq_rate_per_user_unclamped(beta, rho, 0.0, xi);
    const double distorted = deq_rate_per_user_unclamped(beta, rho, tau2, xi);
    return perfect - distorted;
  }
  return secrecy_rate_deq_point(beta, rho, 0.0, xi).rate_per_user
         - secrecy_rate_deq_point(beta, rho, tau2, xi).rate_per_user;
}

double scaling_constant(BetaRegime regime, double b) {
  if (!(b >= 1.0)) throw ValidationError("scaling_constant: requires b >= 1, got "
                                         + std::to_string(b));
  if (regime == BetaRegime::below_one)
    return 0.5 * (std::sqrt(4.0 * b - 3.0) - 1.0);
  return (2.0 / 3.0) * (std::sqrt(3.0 * b - 2.0) - 1.0);
}

namespace {

void validate_bits_args(int M, double b, const char* who) {
  if (M < 2) throw ValidationError(std::string(who) + ": requires M >= 2 (the bit law divides by M-1)");
  if (!(b > 1.0)) throw ValidationError(std::string(who) + ": requires b > 1, got "
                                        + std::to_string(b));
}

}  // namespace

double feedback_bits(int M, BetaRegime regime, double rho_db, double b) {
  validate_bits_args(M, b, "feedback_bits");
  const double m1 = static_cast<double>(M - 1);
  if (regime == BetaRegime::below_one)
    return m1 / 3.0 * rho_db - m1 * (std::log2(std::sqrt(4.0 * b - 3.0) - 1.0) - 1.0);
  return m1 / 3.0 * rho_db - m1 * (std::log2((std::sqrt(3.0 * b - 2.0) - 1.0) / 3.0) + 1.0);
}

double feedback_bits_exact(int M, BetaRegime regime, double rho_db, double b) {
  validate_bits_args(M, b, "feedback_bits_exact");
  const double rho = std::pow(10.0, rho_db / 10.0);
  const double C = scaling_constant(regime, b);
  return static_cast<double>(M - 1) * std::log2(rho / C);
}

FddPlan make_fdd_plan(int M, double beta, double rho_db, double b) {
  FddPlan plan;
  plan.M = M;
  plan.b = b;
  plan.regime = classify_beta_regime(beta);
  plan.C = scaling_constant(plan.regime, b);
  plan.B = feedback_bits(M, plan.regime, rho_db, b);
  plan.B_exact = feedback_bits_exact(M, plan.regime, rho_db, b);
  plan.B_ceil = static_cast<int>(std::ceil(plan.B));
  return plan;
}

RvqCodebook RvqCodebook::generate(int M, int B_bits, const RngSpec& rng) {
  if (M < 1) throw ValidationError("RvqCodebook: M must be >= 1");
  if (B_bits < 0) throw ValidationError("RvqCodebook: B_bits must be >= 0");
  if (B_bits > 20)
    throw ValidationError("RvqCodebook: brute-force quantization is gated to B_bits <= 20, got "
                          + std::to_string(B_bits));
  const long n = 1L << B_bits;
  RvqCodebook cb;
  cb.B_bits = B_bits;
  cb.M = M;
  cb.vectors.resize(M, n);
  ComplexNormalStream stream(rng, RngDomain::rvq, 1.0);
  for (long j = 0; j < n; ++j) {
    for (int i = 0; i < M; ++i) cb.vectors(i, j) = stream.next();
    const double nrm = cb.vectors.col(j).norm();
    if (!(nrm > 0.0))
      throw DegenerateInputError("RvqCodebook: drew a zero vector");
    cb.vectors.col(j) /= nrm;
  }
  return cb;
}

std::pair<int, double> rvq_quantize(const Eigen::VectorXcd& h,
                                    const RvqCodebook& codebook) {
  if (codebook.vectors.cols() == 0)
    throw ValidationError("rvq_quantize: empty codebook");
  if (h.size() != codebook.vectors.rows())
    throw ValidationError("rvq_quantize: dimension mismatch");
  const double hn = h.norm();
  if (!(hn > 0.0)) throw DegenerateInputError("rvq_quantize: zero channel vector");

  const Eigen::VectorXcd dir = h / hn;
  const Eigen::VectorXd overlap =
      (codebook.vectors.adjoint() * dir).cwiseAbs2();
  int best = 0;
  double best_val = overlap(0);
  for (int j = 1; j < overlap.size(); ++j) {
    if (overlap(j) > best_val) {  // strict: ties keep the lowest index
      best_val = overlap(j);
      best = j;
    }
  }
  double sin2 = 1.0 - best_val;
  if (sin2 < 0.0) sin2 = 0.0;  // rounding guard
  return {best, sin2};
}

}  // namespace rcilab
