// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "rcilab/channel.hpp"
#include "rcilab/errors.hpp"
#include "rcilab/gaussian.hpp"

using namespace rcilab;

TEST_CASE("system config validation") {
  CHECK_THROWS_AS((void)SystemConfig::make(0, 1, 1.0, 0.0), ValidationError);
  CHECK_THROWS_AS((void)SystemConfig::make(4, 0, 1.0, 0.0), ValidationError);
  CHECK_THROWS_AS((void)SystemConfig::make(4, 2, 0.0, 0.0), ValidationError);
  CHECK_THROWS_AS((void)SystemConfig::make(4, 2, -1.0, 0.0), ValidationError);
  CHECK_THROWS_AS((void)SystemConfig::make(4, 2, 1.0, -0.1), ValidationError);
  CHECK_THROWS_AS((void)SystemConfig::make(4, 2, 1.0, 1.1), ValidationError);

  const SystemConfig cfg = SystemConfig::make(8, 4, 100.0, 0.25);
  CHECK(cfg.beta == 0.5);
  CHECK(cfg.M == 8);
  CHECK(cfg.K == 4);
}

TEST_CASE("sample_channel shape and bitwise reproducibility") {
  const SystemConfig cfg = SystemConfig::make(6, 3, 10.0, 0.0);
  const RngSpec rng{2026, 17};
  const Eigen::MatrixXcd a = sample_channel(cfg, rng);
  const Eigen::MatrixXcd b = sample_channel(cfg, rng);
  CHECK(a.rows() == 3);
  CHECK(a.cols() == 6);
  CHECK((a - b).norm() == 0.0);

  const Eigen::MatrixXcd c = sample_channel(cfg, RngSpec{2026, 18});
  CHECK((a - c).norm() != 0.0);
}

TEST_CASE("sample_channel fills column-major from the stream") {
  const SystemConfig cfg = SystemConfig::make(2, 2, 10.0, 0.0);
  const RngSpec rng{5, 9};
  const Eigen::MatrixXcd h = sample_channel(cfg, rng);
  ComplexNormalStream s(rng, RngDomain::channel, 1.0);
  CHECK(h(0, 0) == s.next());
  CHECK(h(1, 0) == s.next());
  CHECK(h(0, 1) == s.next());
  CHECK(h(1, 1) == s.next());
}

TEST_CASE("csit pair satisfies H = Hhat + E exactly") {
  const SystemConfig cfg = SystemConfig::make(16, 12, 10.0, 0.3);
  const ChannelPair pair = sample_csit_pair(cfg, RngSpec{7, 0});
  // H is stored as the rounded elementwise sum, so recomputing the same sum
  // must match bit for bit.
  CHECK((pair.H - (pair.Hhat + pair.E)).norm() == 0.0);
  CHECK(pair.H.rows() == 12);
  CHECK(pair.H.cols() == 16);
}

TEST_CASE("csit pair edge variances") {
  const SystemConfig perfect = SystemConfig::make(4, 4, 10.0, 0.0);
  const ChannelPair p0 = sample_csit_pair(perfect, RngSpec{3, 1});
  CHECK(p0.E.norm() == 0.0);
  CHECK((p0.H - p0.Hhat).norm() == 0.0);

  const SystemConfig blind = SystemConfig::make(4, 4, 10.0, 1.0);
  const ChannelPair p1 = sample_csit_pair(blind, RngSpec{3, 1});
  CHECK(p1.Hhat.norm() == 0.0);
  CHECK((p1.H - p1.E).norm() == 0.0);
}

namespace {

// One-sample Kolmogorov-Smirnov statistic against Exp(1).
double ks_exp1(std::vector<double> x) {
  std::sort(x.begin(), x.end());
  const double n = static_cast<double>(x.size());
  double d = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double f = 1.0 - std::exp(-x[i]);
    const double lo = static_cast<double>(i) / n;
    const double hi = static_cast<double>(i + 1) / n;
    d = std::max(d, std::max(std::abs(f - lo), std::abs(hi - f)));
  }
  return d;
}

}  // namespace

TEST_CASE("channel entries are CN(0,1): moments and KS test") {
  const SystemConfig cfg = SystemConfig::make(100, 100, 10.0, 0.0);
  const Eigen::MatrixXcd h = sample_channel(cfg, RngSpec{2026, 0});
  const int n = 100 * 100;

  std::vector<double> mag2(static_cast<std::size_t>(n));
  double mean_re = 0.0, mean_im = 0.0;
  for (int j = 0, idx = 0; j < 100; ++j)
    for (int i = 0; i < 100; ++i, ++idx) {
      mag2[static_cast<std::size_t>(idx)] = std::norm(h(i, j));
      mean_re += h(i, j).real();
      mean_im += h(i, j).imag();
    }
  mean_re /= n;
  mean_im /= n;

  double mean_mag2 = 0.0;
  for (double v : mag2) mean_mag2 += v;
  mean_mag2 /= n;

  // stderr of the mean of |h|^2 ~ Exp(1) is 1/sqrt(n) = 1%.
  CHECK(std::abs(mean_mag2 - 1.0) < 0.04);
  CHECK(std::abs(mean_re) < 0.03);
  CHECK(std::abs(mean_im) < 0.03);
  // |h|^2 ~ Exp(1); 1.63/sqrt(n) is the alpha = 0.01 KS threshold.
  CHECK(ks_exp1(mag2) < 1.63 / std::sqrt(static_cast<double>(n)));
}

TEST_CASE("csit split carries the documented variances and is uncorrelated") {
  const double tau2 = 0.3;
  const SystemConfig cfg = SystemConfig::make(100, 100, 10.0, tau2);
  const ChannelPair pair = sample_csit_pair(cfg, RngSpec{99, 4});
  const int n = 100 * 100;

  double vh = 0.0, ve = 0.0;
  std::complex<double> cross{0.0, 0.0};
  for (int j = 0; j < 100; ++j)
    for (int i = 0; i < 100; ++i) {
      vh += std::norm(pair.Hhat(i, j));
      ve += std::norm(pair.E(i, j));
      cross += pair.Hhat(i, j) * std::conj(pair.E(i, j));
    }
  vh /= n;
  ve /= n;
  cross /= static_cast<double>(n);

  CHECK(vh == doctest::Approx(1.0 - tau2).epsilon(0.04));
  CHECK(ve == doctest::Approx(tau2).epsilon(0.04));
  // Independent zero-mean factors: empirical cross moment is O(1/sqrt(n)).
  CHECK(std::abs(cross) < 0.02);
  // And the sum has unit variance.
  double v = 0.0;
  for (int j = 0; j < 100; ++j)
    for (int i = 0; i < 100; ++i) v += std::norm(pair.H(i, j));
  CHECK(v / n == doctest::Approx(1.0).epsilon(0.04));
}

TEST_CASE("estimate and error streams are domain-separated") {
  // Same (seed, stream): Hhat and E must come from different substreams, so
  // with equal variances they must not be proportional.
  const SystemConfig cfg = SystemConfig::make(8, 8, 10.0, 0.5);
  const ChannelPair pair = sample_csit_pair(cfg, RngSpec{11, 0});
  CHECK((pair.Hhat - pair.E).norm() != 0.0);
}
