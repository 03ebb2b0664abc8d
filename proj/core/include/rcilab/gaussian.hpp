// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <complex>
#include <cstdint>

#include "rcilab/philox.hpp"

namespace rcilab {

// Top 53 bits -> (0,1]; the +1 keeps log() finite.
inline double u64_to_unit_open(std::uint64_t x) noexcept {
  return static_cast<double>((x >> 11) + 1) * 0x1p-53;
}

// Top 53 bits -> [0,1).
inline double u64_to_unit_halfopen(std::uint64_t x) noexcept {
  return static_cast<double>(x >> 11) * 0x1p-53;
}

// Basic (trigonometric) Box-Muller. The exact construction is part of the
// reproducibility contract: one 64-bit word pair (x0, x1) maps to
//   u1 = ((x0>>11)+1)*2^-53, u2 = (x1>>11)*2^-53,
//   z  = sqrt(-2 ln u1) * (cos(2 pi u2) + i sin(2 pi u2)).
inline std::complex<double> box_muller_pair(std::uint64_t x0,
                                            std::uint64_t x1) noexcept {
  const double u1 = u64_to_unit_open(x0);
  const double u2 = u64_to_unit_halfopen(x1);
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double th = 2.0 * M_PI * u2;
  return {r * std::cos(th), r * std::sin(th)};
}

// Stream of i.i.d. CN(0, variance) samples: real and imaginary parts are
// independent N(0, variance/2). Two counter words per sample, so one Philox
// block yields exactly two samples.
class ComplexNormalStream {
 public:
  ComplexNormalStream(const RngSpec& spec, RngDomain domain,
                      double variance) noexcept
      : eng_(spec, domain), scale_(std::sqrt(variance / 2.0)) {}

  std::complex<double> next() noexcept {
    const std::uint64_t x0 = eng_.next();
    const std::uint64_t x1 = eng_.next();
    return scale_ * box_muller_pair(x0, x1);
  }

 private:
  Philox4x64 eng_;
  double scale_;
};

}  // namespace rcilab
