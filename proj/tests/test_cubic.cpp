// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <cmath>

#include "rcilab/cubic.hpp"
#include "rcilab/errors.hpp"

using namespace rcilab;

TEST_CASE("three simple roots") {
  const CubicRoots r = solve_cubic_real(1.0, -6.0, 11.0, -6.0);
  REQUIRE(r.count == 3);
  CHECK(r.roots[0] == doctest::Approx(1.0).epsilon(1e-13));
  CHECK(r.roots[1] == doctest::Approx(2.0).epsilon(1e-13));
  CHECK(r.roots[2] == doctest::Approx(3.0).epsilon(1e-13));
}

TEST_CASE("negative leading coefficient") {
  const CubicRoots r = solve_cubic_real(-1.0, 6.0, -11.0, 6.0);
  REQUIRE(r.count == 3);
  CHECK(r.roots[0] == doctest::Approx(1.0).epsilon(1e-13));
  CHECK(r.roots[2] == doctest::Approx(3.0).epsilon(1e-13));
}

TEST_CASE("double root") {
  // (x - 2)^2 (x + 1) = x^3 - 3x^2 + 4.
  const CubicRoots r = solve_cubic_real(1.0, -3.0, 0.0, 4.0);
  REQUIRE(r.count == 2);
  CHECK(r.roots[0] == doctest::Approx(-1.0).epsilon(1e-10));
  CHECK(r.roots[1] == doctest::Approx(2.0).epsilon(1e-7));
}

TEST_CASE("triple root") {
  // (x - 5)^3.
  const CubicRoots r = solve_cubic_real(1.0, -15.0, 75.0, -125.0);
  REQUIRE(r.count == 1);
  CHECK(r.roots[0] == doctest::Approx(5.0).epsilon(1e-5));
}

TEST_CASE("single real root with Cardano") {
  // x^3 + x + 1; the real root is a standard reference value.
  const CubicRoots r = solve_cubic_real(1.0, 0.0, 1.0, 1.0);
  REQUIRE(r.count == 1);
  CHECK(r.roots[0] == doctest::Approx(-0.68232780382801933).epsilon(1e-13));
}

TEST_CASE("widely separated roots survive cancellation") {
  // (x - 1)(x - 2)(x - 1e8).
  const double s = 1.0e8;
  const CubicRoots r = solve_cubic_real(1.0, -(s + 3.0), 3.0 * s + 2.0, -2.0 * s);
  REQUIRE(r.count == 3);
  CHECK(r.roots[0] == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(r.roots[1] == doctest::Approx(2.0).epsilon(1e-9));
  CHECK(r.roots[2] == doctest::Approx(s).epsilon(1e-12));
}

TEST_CASE("quadratic fallback keeps the small root accurate") {
  const CubicRoots r = solve_cubic_real(0.0, 1.0, -1.0e8, 1.0);
  REQUIRE(r.count == 2);
  CHECK(r.roots[0] == doctest::Approx(1.0e-8).epsilon(1e-10));
  CHECK(r.roots[1] == doctest::Approx(1.0e8).epsilon(1e-10));

  const CubicRoots q = solve_cubic_real(0.0, 2.0, -3.0, 1.0);
  REQUIRE(q.count == 2);
  CHECK(q.roots[0] == doctest::Approx(0.5).epsilon(1e-13));
  CHECK(q.roots[1] == doctest::Approx(1.0).epsilon(1e-13));

  const CubicRoots none = solve_cubic_real(0.0, 1.0, 0.0, 1.0);
  CHECK(none.count == 0);
}

TEST_CASE("linear fallback and degenerate input") {
  const CubicRoots r = solve_cubic_real(0.0, 0.0, 5.0, -10.0);
  REQUIRE(r.count == 1);
  CHECK(r.roots[0] == doctest::Approx(2.0).epsilon(1e-14));
  CHECK_THROWS_AS((void)solve_cubic_real(0.0, 0.0, 0.0, 1.0), ValidationError);
}

TEST_CASE("residuals vanish at the returned roots") {
  const double a = 4.0, b = -17.3, c = 0.002, d = 9.1;
  const CubicRoots r = solve_cubic_real(a, b, c, d);
  REQUIRE(r.count >= 1);
  for (int i = 0; i < r.count; ++i) {
    const double x = r.roots[i];
    const double f = ((a * x + b) * x + c) * x + d;
    const double scale = std::abs(a * x * x * x) + std::abs(b * x * x)
                         + std::abs(c * x) + std::abs(d);
    CHECK(std::abs(f) <= 1e-12 * scale);
  }
}
