// SPDX-License-Identifier: Apache-2.0
#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "maxstab/quadrature.hpp"

using namespace maxstab;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

TEST_CASE("ball volume and moments") {
  const BallRule b = ball_rule(1.0);
  CHECK_THAT(b.total_weight(), WithinRel(4.0 * pi / 3.0, 1e-13));
  CHECK_THAT(b.integrate([](const Vec3& x) { return x.squaredNorm(); }), WithinAbs(4.0 * pi / 5.0, 1e-12));
  const BallRule s = shell_rule(1.0, 2.0, 16, 16, 32);
  CHECK_THAT(s.total_weight(), WithinRel(4.0 * pi / 3.0 * 7.0, 1e-13));
}

TEST_CASE("j0 cutoff squared integral") {
  for (double R : {1.0, 2.0}) {
    const BallRule b = ball_rule(R);
    const double v = b.integrate([&](const Vec3& x) {
      const double r = x.norm();
      const double chi = r > 0 ? R * std::sin(pi * r / R) / (pi * r) : 1.0;
      return chi * chi;
    });
    CHECK_THAT(v, WithinRel(2.0 * R * R * R / pi, 1e-10));
  }
}

TEST_CASE("sphere rule") {
  const SphereRule s = sphere_rule(1.0);
  CHECK_THAT(s.integrate([](const Vec3&) { return 1.0; }), WithinRel(4.0 * pi, 1e-14));
  const Vec3 A = Vec3(1, 2, -0.5).normalized();
  CHECK_THAT(s.integrate([&](const Vec3& x) { return x.cross(A).squaredNorm(); }), WithinRel(8.0 * pi / 3.0, 1e-13));
  // Y_2^0 = sqrt(5/(16π)) (3cos²φ − 1).
  CHECK_THAT(s.integrate([](const Vec3& x) {
               const double y = std::sqrt(5.0 / (16.0 * pi)) * (3.0 * x(2) * x(2) - 1.0);
               return y * y;
             }),
             WithinRel(1.0, 1e-13));
  CHECK_THAT(sphere_rule(3.0).integrate([](const Vec3&) { return 1.0; }), WithinRel(36.0 * pi, 1e-14));
}

TEST_CASE("polynomial exactness") {
  const BallRule b = ball_rule(1.0, 6, 6, 16);
  // ∫_{B_1} r^8 = 4π/11.
  CHECK_THAT(b.integrate([](const Vec3& x) { return std::pow(x.squaredNorm(), 4); }), WithinRel(4.0 * pi / 11.0, 1e-13));
  // ∫_{S²} cos^10 = 4π/11.
  CHECK_THAT(sphere_rule(1.0, 6, 16).integrate([](const Vec3& x) { return std::pow(x(2), 10); }),
             WithinRel(4.0 * pi / 11.0, 1e-13));
}

TEST_CASE("refinement harness for smooth integrands") {
  auto f = [](const Vec3& x) { return std::exp(-x.squaredNorm()) * std::cos(3.0 * x(0) + x(1)) + x(2) * x(2); };
  const double base = ball_rule(1.0).integrate(f);
  const double fine = ball_rule(1.0, 64, 64, 128).integrate(f);
  CHECK(std::abs(base - fine) < 1e-9 * std::abs(fine));
}

TEST_CASE("composite rule splits at breaks") {
  const GaussRule g = composite_gauss(8, 0.0, 1.0, {0.3, 0.3 + 1e-9, 0.7});
  double s = 0.0;
  for (std::size_t i = 0; i < g.x.size(); ++i) s += g.w[i] * (g.x[i] < 0.3 ? 1.0 : g.x[i] < 0.7 ? 2.0 : 5.0);
  CHECK_THAT(s, WithinAbs(0.3 + 0.8 + 1.5, 1e-14));
  CHECK(g.x.size() == 24);
}

TEST_CASE("guards") {
  CHECK_THROWS(angular_rule(1, 4));
  CHECK_THROWS(shell_rule(2.0, 1.0, 4, 4, 4));
  CHECK_THROWS(shell_rule(0.0, 1.0, 1, 4, 4));
}
