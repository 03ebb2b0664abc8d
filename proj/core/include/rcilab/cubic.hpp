// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>

namespace rcilab {

// Real roots of a*x^3 + b*x^2 + c*x + d = 0 in ascending order.
// Degenerate leading coefficients fall back to the quadratic/linear case.
struct CubicRoots {
  int count = 0;
  std::array<double, 3> roots{};
};

// Closed form (trigonometric for three real roots, Cardano otherwise) with a
// Newton polish on the original polynomial.
CubicRoots solve_cubic_real(double a, double b, double c, double d);

}  // namespace rcilab
