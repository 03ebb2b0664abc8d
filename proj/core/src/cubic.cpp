// SPDX-License-Identifier: Apache-2.0
#include "rcilab/cubic.hpp"

#include <algorithm>
#include <cmath>

#include "rcilab/errors.hpp"

namespace rcilab {

namespace {

// Guarded Newton: a step is kept only while it shrinks |f|, so starting
// points near a stationary point cannot send the iterate off to infinity.
double polish_root(double a, double b, double c, double d, double x) {
  double fx = ((a * x + b) * x + c) * x + d;
  for (int it = 0; it < 6; ++it) {
    if (fx == 0.0) break;
    const double fp = (3.0 * a * x + 2.0 * b) * x + c;
    if (fp == 0.0) break;
    const double step = fx / fp;
    const double xn = x - step;
    if (!std::isfinite(xn)) break;
    const double fn = ((a * xn + b) * xn + c) * xn + d;
    if (!(std::abs(fn) < std::abs(fx))) break;
    x = xn;
    fx = fn;
  }
  return x;
}

}  // namespace

CubicRoots solve_cubic_real(double a, double b, double c, double d) {
  CubicRoots out;
  if (a == 0.0) {
    if (b == 0.0) {
      if (c == 0.0)
        throw ValidationError("solve_cubic_real: all leading coefficients are zero");
      out.count = 1;
      out.roots[0] = -d / c;
      return out;
    }
    const double disc = c * c - 4.0 * b * d;
    if (disc < 0.0) return out;
    const double sq = std::sqrt(disc);
    // Citardauq form for the small root to avoid cancellation.
    const double q = -0.5 * (c + (c >= 0.0 ? sq : -sq));
    double r0 = q / b;
    double r1 = (q != 0.0) ? d / q : -c / b - r0;
    if (r0 > r1) std::swap(r0, r1);
    out.count = disc == 0.0 ? 1 : 2;
    out.roots[0] = r0;
    out.roots[1] = r1;
    return out;
  }

  // Monic: x^3 + p2 x^2 + p1 x + p0, then depressed t^3 + pt + q, x = t - p2/3.
  const double p2 = b / a;
  const double p1 = c / a;
  const double p0 = d / a;
  const double shift = p2 / 3.0;
  const double p = p1 - p2 * p2 / 3.0;
  const double q = p0 - p2 * p1 / 3.0 + 2.0 * p2 * p2 * p2 / 27.0;
  const double disc = -(4.0 * p * p * p + 27.0 * q * q);

  if (disc > 0.0) {
    // Three distinct real roots: Viete's trigonometric form. When two roots
    // sit close together far from the third, the trig form only resolves
    // them to sqrt(eps), so keep the best-conditioned root (largest |f'|)
    // and recover the other two from the deflated quadratic.
    const double m = 2.0 * std::sqrt(-p / 3.0);
    const double arg = std::clamp(3.0 * q / (p * m), -1.0, 1.0);
    const double theta = std::acos(arg) / 3.0;
    double best = 0.0, best_fp = -1.0;
    for (int k = 0; k < 3; ++k) {
      const double x = m * std::cos(theta - 2.0 * M_PI * k / 3.0) - shift;
      const double fp = std::abs((3.0 * a * x + 2.0 * b) * x + c);
      if (fp > best_fp) {
        best_fp = fp;
        best = x;
      }
    }
    const double r = polish_root(a, b, c, d, best);
    // x^3 + p2 x^2 + p1 x + p0 = (x - r)(x^2 + B x + C); C from the root
    // product stays accurate when |r| dominates, B is fixed up by polishing.
    const double B = p2 + r;
    const double C = (r != 0.0) ? -p0 / r : p1;
    const double qdisc = std::max(B * B - 4.0 * C, 0.0);
    const double sq = std::sqrt(qdisc);
    const double qq = -0.5 * (B + (B >= 0.0 ? sq : -sq));
    out.count = 3;
    out.roots[0] = r;
    out.roots[1] = polish_root(a, b, c, d, qq);
    out.roots[2] = polish_root(a, b, c, d, (qq != 0.0) ? C / qq : -B - qq);
    std::sort(out.roots.begin(), out.roots.begin() + 3);
    return out;
  } else if (disc == 0.0) {
    if (p == 0.0) {
      out.count = 1;
      out.roots[0] = -shift;
    } else {
      out.count = 2;
      out.roots[0] = 3.0 * q / p - shift;         // simple root
      out.roots[1] = -3.0 * q / (2.0 * p) - shift;  // double root
    }
  } else {
    // One real root: Cardano with a cancellation-safe branch.
    const double sq = std::sqrt(-disc / 108.0);  // sqrt(q^2/4 + p^3/27)
    const double u = std::cbrt(-q / 2.0 + (q <= 0.0 ? sq : -sq));
    const double v = (u != 0.0) ? -p / (3.0 * u) : 0.0;
    out.count = 1;
    out.roots[0] = u + v - shift;
  }

  for (int k = 0; k < out.count; ++k)
    out.roots[k] = polish_root(a, b, c, d, out.roots[k]);
  std::sort(out.roots.begin(), out.roots.begin() + out.count);
  return out;
}

}  // namespace rcilab
