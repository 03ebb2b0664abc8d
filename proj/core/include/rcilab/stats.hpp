// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

namespace rcilab {

// Neumaier-compensated serial summation. Summing per-trial values in a fixed
// order makes the Monte Carlo mean independent of the thread count.
class NeumaierSum {
 public:
  void add(double x) noexcept {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x))
      comp_ += (sum_ - t) + x;
    else
      comp_ += (x - t) + sum_;
    sum_ = t;
  }

  double value() const noexcept { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

struct MeanStd {
  double mean = 0.0;
  double std_error = 0.0;
  double ci95_low = 0.0;
  double ci95_high = 0.0;
  std::size_t n = 0;
};

// Two-sided 95% normal quantile.
inline constexpr double kZ95 = 1.959963984540054;

// Mean, standard error (ddof = 1) and normal-approximation 95% CI, reduced
// in index order.
inline MeanStd summarize(const std::vector<double>& values) {
  MeanStd out;
  out.n = values.size();
  if (out.n == 0) return out;

  NeumaierSum s;
  for (double v : values) s.add(v);
  out.mean = s.value() / static_cast<double>(out.n);

  if (out.n > 1) {
    NeumaierSum sq;
    for (double v : values) {
      const double d = v - out.mean;
      sq.add(d * d);
    }
    const double var = sq.value() / static_cast<double>(out.n - 1);
    out.std_error = std::sqrt(var / static_cast<double>(out.n));
  }
  out.ci95_low = out.mean - kZ95 * out.std_error;
  out.ci95_high = out.mean + kZ95 * out.std_error;
  return out;
}

}  // namespace rcilab
