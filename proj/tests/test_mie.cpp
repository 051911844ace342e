// SPDX-License-Identifier: Apache-2.0
#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "maxstab/mie.hpp"
#include "maxstab/morawetz.hpp"
#include "support/shooting_oracle.hpp"

using namespace maxstab;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

oracle::Layers to_oracle(const LayeredMedium& m) { return {m.radii, m.eps, m.mu, m.eps0, m.mu0}; }

double rel(cd a, cd b) { return std::abs(a - b) / std::abs(b); }

Vec3 random_unit(std::mt19937_64& rng) {
  std::normal_distribution<double> nd;
  return Vec3(nd(rng), nd(rng), nd(rng)).normalized();
}

Vec3 orthogonal_unit(std::mt19937_64& rng, const Vec3& d) {
  Vec3 v = random_unit(rng);
  v -= v.dot(d) * d;
  return v.normalized();
}

LayeredMedium two_layer() {
  LayeredMedium m;
  m.radii = {0.6, 1.0};
  m.eps = {2.5, 0.7};
  m.mu = {1.3, 0.9};
  return m;
}

}  // namespace

TEST_CASE("uniform medium has no scattered field") {
  LayeredMedium m;
  m.radii = {0.5, 1.0};
  m.eps = {1.0, 1.0};
  m.mu = {1.0, 1.0};
  const PlaneWaveIncidence inc{Vec3::UnitZ(), Vec3::UnitX(), 3.0};
  const MultipoleSolution sol = solve_layered(m, inc);
  for (int n = 1; n <= sol.N; ++n) {
    CHECK(std::abs(sol.orders[n].a) < 1e-14);
    CHECK(std::abs(sol.orders[n].b) < 1e-14);
  }
  for (const Vec3& x : {Vec3(0.1, 0.2, 0.3), Vec3(0.0, 0.0, 0.0), Vec3(-1.5, 0.4, 2.0)}) {
    const FieldPair f = eval_fields(sol, x);
    const FieldPair g = incident_fields(inc, 1.0, 1.0, x);
    CHECK((f.E - g.E).norm() < 1e-13);
    CHECK((f.H - g.H).norm() < 1e-13);
  }
}

TEST_CASE("coefficients against the shooting oracle") {
  const LayeredMedium single = example1_medium(0.5, 1.0, 1.0);
  const auto [a1, b1] = oracle::coefficients(to_oracle(single), 2.0, 1);
  const auto orders = solve_orders(single, 2.0, 1);
  CHECK(rel(orders[1].a, a1) < 1e-6);
  CHECK(rel(orders[1].b, b1) < 1e-6);

  const LayeredMedium m = two_layer();
  for (double w : {1.0, 2.0, 4.0}) {
    const auto o = solve_orders(m, w, 20);
    for (int n = 1; n <= 20; ++n) {
      const auto [a, b] = oracle::coefficients(to_oracle(m), w, n);
      REQUIRE(rel(o[n].a, a) < 1e-6);
      REQUIRE(rel(o[n].b, b) < 1e-6);
    }
  }
}

TEST_CASE("on-axis field against the oracle") {
  const LayeredMedium single = example1_medium(0.5, 1.0, 1.0);
  const MultipoleSolution sol = solve_layered(single, {Vec3::UnitZ(), Vec3::UnitX(), 2.0});
  const FieldPair f = eval_fields(sol, Vec3(0, 0, 2));
  const cd ex = oracle::axis_field_x(to_oracle(single), 2.0, 2.0, sol.N);
  CHECK(std::abs(f.E(0) - ex) < 1e-6 * std::abs(ex));
  CHECK(std::abs(f.E(1)) < 1e-12);
  CHECK(std::abs(f.E(2)) < 1e-12);
  CHECK_THAT(f.E.norm(), WithinRel(std::abs(ex), 1e-6));
}

TEST_CASE("tangential traces are continuous across interfaces") {
  const LayeredMedium m = two_layer();
  std::mt19937_64 rng(11);
  const PlaneWaveIncidence inc{Vec3(0.3, -0.2, 1).normalized(), orthogonal_unit(rng, Vec3(0.3, -0.2, 1).normalized()),
                               2.7};
  const MultipoleSolution sol = solve_layered(m, inc);
  double worst = 0.0, normal_D = 0.0;
  for (int i = 0; i < 100; ++i) {
    const Vec3 n = random_unit(rng);
    const double r = m.radii[i % 2];
    const FieldPair in = eval_fields(sol, r * (1.0 - 1e-12) * n);
    const FieldPair out = eval_fields(sol, r * (1.0 + 1e-12) * n);
    auto tang = [&](const CVec3& v) { const CVec3 nc = n.cast<cd>(); return CVec3(v - bdot(v, nc) * nc); };
    const double scale = in.E.norm() + in.H.norm();
    worst = std::max(worst, ((tang(in.E) - tang(out.E)).norm() + (tang(in.H) - tang(out.H)).norm()) / scale);
    const double e_in = m.eps[i % 2], e_out = i % 2 == 0 ? m.eps[1] : m.eps0;
    normal_D = std::max(normal_D, std::abs(e_in * bdot(in.E, n) - e_out * bdot(out.E, n)) / scale);
  }
  CHECK(worst < 1e-8);
  CHECK(normal_D < 1e-8);
}

TEST_CASE("fields satisfy the source-free Maxwell system inside shells") {
  const LayeredMedium m = two_layer();
  const MultipoleSolution sol = solve_layered(m, {Vec3::UnitZ(), Vec3::UnitY(), 2.0});
  for (const Vec3& x : {Vec3(0.2, 0.1, -0.1), Vec3(0.5, 0.5, 0.3), Vec3(1.2, -0.4, 0.9), Vec3(0.0, 0.0, 0.3)}) {
    const double r = x.norm();
    const double eps = r < 0.6 ? 2.5 : r < 1.0 ? 0.7 : 1.0;
    const double mu = r < 0.6 ? 1.3 : r < 1.0 ? 0.9 : 1.0;
    const FieldPair f = eval_fields(sol, x);
    const CVec3 curlH = curl_fd([&](const Vec3& y) { return eval_fields(sol, y).H; }, x, 1e-4);
    const CVec3 curlE = curl_fd([&](const Vec3& y) { return eval_fields(sol, y).E; }, x, 1e-4);
    CHECK((I * 2.0 * eps * f.E + curlH).norm() < 1e-5 * curlH.norm());
    CHECK((-I * 2.0 * mu * f.H + curlE).norm() < 1e-5 * curlE.norm());
  }
}

TEST_CASE("far-field Silver-Mueller decay") {
  const MultipoleSolution sol = solve_layered(example1_medium(0.5, 1.0, 1.0), {Vec3::UnitZ(), Vec3::UnitX(), 2.0});
  const Vec3 xhat = Vec3(0.3, 0.5, 0.8).normalized();
  std::vector<double> lr, lv;
  for (double r : {50.0, 100.0, 200.0}) {
    const FieldPair f = eval_fields(sol, r * xhat, FieldPart::Scattered);
    const CVec3 HxX = ccross(f.H, xhat.cast<cd>());
    lr.push_back(std::log(r));
    lv.push_back(std::log((f.E - HxX).norm()));
  }
  const double slope = (lv.back() - lv.front()) / (lr.back() - lr.front());
  CHECK_THAT(slope, WithinAbs(-2.0, 0.05));

  const CVec3 F = far_field(sol, xhat);
  const double r = 400.0;
  const FieldPair f = eval_fields(sol, r * xhat, FieldPart::Scattered);
  const cd phase = std::exp(I * 2.0 * r) / r;
  CHECK((f.E - phase * F).norm() < 5e-2 * (phase * F).norm());
}

TEST_CASE("optical theorem for lossless media") {
  for (double w : {0.7, 2.0, 6.0}) {
    const MultipoleSolution sol = solve_layered(two_layer(), {Vec3::UnitZ(), Vec3::UnitX(), w});
    CHECK_THAT(extinction_efficiency(sol), WithinRel(scattering_efficiency(sol), 1e-8));
  }
}

TEST_CASE("reciprocity of the far-field pattern") {
  const LayeredMedium m = two_layer();
  std::mt19937_64 rng(3);
  for (int i = 0; i < 10; ++i) {
    const Vec3 d = random_unit(rng), p = orthogonal_unit(rng, d);
    const Vec3 x = random_unit(rng), q = orthogonal_unit(rng, x);
    const double w = 2.3;
    const cd lhs = bdot(far_field(solve_layered(m, {d, p, w}), x), q);
    const cd rhs = bdot(far_field(solve_layered(m, {Vec3(-x), q, w}), -d), p);
    CHECK(std::abs(lhs - rhs) < 1e-8 * std::max(std::abs(lhs), 1e-3));
  }
}

TEST_CASE("weighted energies") {
  LayeredMedium empty;
  empty.mu0 = 2.0;
  const PlaneWaveIncidence inc{Vec3::UnitX(), Vec3::UnitZ(), 1.5};
  const MultipoleSolution s0 = solve_layered(empty, inc);
  const BallRule b1 = ball_rule(1.0);
  const EnergyPair ei = weighted_energy(s0, CoeffProfile::constant(1.0), CoeffProfile::constant(1.0), b1,
                                        FieldPart::Incident);
  CHECK_THAT(ei.E, WithinRel(2.0 * 4.0 * pi / 3.0, 1e-12));
  const EnergyPair es = weighted_energy(s0, CoeffProfile::constant(1.0), CoeffProfile::constant(1.0), b1,
                                        FieldPart::Scattered);
  CHECK(es.E == 0.0);
  CHECK(es.H == 0.0);

  const LayeredMedium m = example1_medium(0.5, 1.0, 1.0);
  const MultipoleSolution sol = solve_layered(m, {Vec3::UnitZ(), Vec3::UnitX(), 2.0});
  const CoeffProfile eps = m.eps_profile(), mu = m.mu_profile();
  const BallRule rule = energy_rule(sol, 2.0, 24, 24, 48);
  const EnergyPair e = weighted_energy(sol, eps, mu, rule);
  const EnergyPair e2 = weighted_energy(sol, eps, mu, energy_rule(sol, 2.0, 48, 48, 96));
  CHECK(std::abs(e.E - e2.E) < 1e-8 * e2.E);
  CHECK(std::abs(e.H - e2.H) < 1e-8 * e2.H);

  // Generic node loop through eval_fields.
  const BallRule coarse = energy_rule(sol, 2.0, 12, 16, 32);
  double gE = 0.0, gH = 0.0, uE = 0.0;
  coarse.for_each_node([&](const Vec3& x, double w) {
    const FieldPair f = eval_fields(sol, x);
    gE += w * quad_form(eps.value(x), f.E);
    gH += w * quad_form(mu.value(x), f.H);
    uE += w * f.E.squaredNorm();
  });
  const EnergyPair fast = weighted_energy(sol, eps, mu, coarse);
  CHECK_THAT(fast.E, WithinRel(gE, 1e-12));
  CHECK_THAT(fast.H, WithinRel(gH, 1e-12));
  const EnergyPair unit = weighted_energy(sol, CoeffProfile::constant(1.0), CoeffProfile::constant(1.0), coarse);
  CHECK_THAT(unit.E, WithinRel(uE, 1e-12));
  // Recorded values; the 64/64/128 rule reproduces them to 1e-15.
  CHECK_THAT(e2.E, WithinRel(30.52171663179126, 1e-12));
  CHECK_THAT(e2.H, WithinRel(30.12834709820393, 1e-12));
}

TEST_CASE("boundary flux") {
  const LayeredMedium m = example1_medium(0.5, 1.0, 1.0);
  for (double w : {1.0, 2.0, 4.0, 8.0}) {
    const MultipoleSolution sol = solve_layered(m, {Vec3::UnitZ(), Vec3::UnitX(), w});
    const SphereRule srule = sphere_rule(2.0, 96, 192);
    const FluxResult f = boundary_flux(sol, 2.0, 2.0, srule);
    CHECK(f.value >= -1e-9 * f.scale);

    // Normal/tangential form of the integrand, evaluated independently.
    double alt = 0.0;
    srule.for_each_node([&](const Vec3& x, double wgt) {
      const FieldPair p = eval_fields(sol, x, FieldPart::Scattered);
      const CVec3 n = x.normalized().cast<cd>();
      const CVec3 EN = bdot(p.E, n) * n, HN = bdot(p.H, n) * n;
      const CVec3 ET = p.E - EN, HT = p.H - HN;
      const double r = x.norm();
      alt += wgt * (r * EN.squaredNorm() + r * HN.squaredNorm() - r * (ET - ccross(HT, n)).squaredNorm());
    });
    CHECK(std::abs(f.value - alt) < 1e-10 * f.scale);
  }
  LayeredMedium empty;
  const MultipoleSolution s0 = solve_layered(empty, {Vec3::UnitZ(), Vec3::UnitX(), 1.0});
  CHECK(boundary_flux(s0, 2.0, 2.0, sphere_rule(2.0)).value == 0.0);
}

TEST_CASE("pointwise flux integrand identity") {
  const LayeredMedium m = example1_medium(0.5, 1.0, 1.0);
  const MultipoleSolution sol = solve_layered(m, {Vec3::UnitZ(), Vec3::UnitX(), 3.0});
  std::mt19937_64 rng(9);
  for (int i = 0; i < 20; ++i) {
    const Vec3 x = 2.0 * random_unit(rng);
    const FieldPair p = eval_fields(sol, x, FieldPart::Scattered);
    FieldSample s;
    s.x = x;
    s.E = p.E;
    s.H = p.H;
    s.beta = x.norm();
    const Vec3 xh = x.normalized();
    const double lhs = q_beta(s).dot(xh);
    const CVec3 n = xh.cast<cd>();
    const CVec3 EN = bdot(p.E, n) * n, HN = bdot(p.H, n) * n;
    const double r = x.norm();
    const double rhs = r * EN.squaredNorm() + r * HN.squaredNorm() - r * ((p.E - EN) - ccross(p.H - HN, n)).squaredNorm();
    CHECK(std::abs(lhs - rhs) < 1e-10 * (p.E.squaredNorm() + p.H.squaredNorm()) * r);
  }
}

TEST_CASE("truncation failure carries the tail") {
  MieOptions opt;
  opt.order_cap = 4;
  try {
    solve_layered(example1_medium(0.5, 1.0, 1.0), {Vec3::UnitZ(), Vec3::UnitX(), 20.0}, opt);
    FAIL("expected MieTruncationError");
  } catch (const MieTruncationError& e) {
    CHECK(e.tail() > 1e-12);
  }
}

TEST_CASE("medium and incidence validation") {
  LayeredMedium bad;
  bad.radii = {1.0, 0.5};
  bad.eps = {1.0, 1.0};
  bad.mu = {1.0, 1.0};
  CHECK_THROWS(bad.validate());
  PlaneWaveIncidence inc{Vec3::UnitZ(), Vec3::UnitZ(), 1.0};
  CHECK_THROWS(inc.validate());
  inc = {Vec3::UnitZ(), Vec3::UnitX(), 0.0};
  CHECK_THROWS(inc.validate());
}

TEST_CASE("example media") {
  const LayeredMedium e3 = example3_medium(1.0, 1.0, true, 1.0);
  REQUIRE(e3.radii.size() >= 10);
  for (std::size_t j = 0; j + 1 < e3.radii.size(); ++j) {
    CHECK(e3.radii[j] < e3.radii[j + 1]);
    CHECK(e3.eps[j] <= e3.eps[j + 1]);
  }
  CHECK_THAT(e3.eps[1], WithinAbs(0.75, 1e-15));
  const LayeredMedium e1 = example1_medium(0.5, 0.7, 1.3, 2.0, 3.0);
  CHECK(e1.radii == std::vector<double>{1.3});
  CHECK(e1.eps0 == 2.0);
  CHECK(e1.mu0 == 3.0);
}
