// SPDX-License-Identifier: Apache-2.0
#include "rcilab/channel.hpp"

#include <string>

#include "rcilab/errors.hpp"
#include "rcilab/gaussian.hpp"

namespace rcilab {

SystemConfig SystemConfig::make(int M, int K, double rho, double tau2) {
  if (M < 1) throw ValidationError("SystemConfig: M must be >= 1, got " + std::to_string(M));
  if (K < 1) throw ValidationError("SystemConfig: K must be >= 1, got " + std::to_string(K));
  if (!(rho > 0.0)) throw ValidationError("SystemConfig: rho must be > 0, got " + std::to_string(rho));
  if (!(tau2 >= 0.0 && tau2 <= 1.0))
    throw ValidationError("SystemConfig: tau2 must be in [0,1], got " + std::to_string(tau2));
  SystemConfig cfg;
  cfg.M = M;
  cfg.K = K;
  cfg.rho = rho;
  cfg.tau2 = tau2;
  cfg.beta = static_cast<double>(K) / static_cast<double>(M);
  return cfg;
}

namespace {

// Column-major fill from a sequential stream; the fill order is part of the
// reproducibility contract.
Eigen::MatrixXcd fill_matrix(int K, int M, ComplexNormalStream& stream) {
  Eigen::MatrixXcd A(K, M);
  for (int j = 0; j < M; ++j)
    for (int i = 0; i < K; ++i) A(i, j) = stream.next();
  return A;
}

}  // namespace

Eigen::MatrixXcd sample_channel(const SystemConfig& cfg, const RngSpec& rng) {
  ComplexNormalStream stream(rng, RngDomain::channel, 1.0);
  return fill_matrix(cfg.K, cfg.M, stream);
}

ChannelPair sample_csit_pair(const SystemConfig& cfg, const RngSpec& rng) {
  ComplexNormalStream hat(rng, RngDomain::estimate, 1.0 - cfg.tau2);
  ComplexNormalStream err(rng, RngDomain::error, cfg.tau2);
  ChannelPair pair;
  pair.Hhat = fill_matrix(cfg.K, cfg.M, hat);
  pair.E = fill_matrix(cfg.K, cfg.M, err);
  pair.H = pair.Hhat + pair.E;
  return pair;
}

}  // namespace rcilab
