// SPDX-License-Identifier: Apache-2.0
// Prints one PASS/FAIL line per acceptance criterion and exits nonzero if any
// asserted criterion fails. Criterion 7 is diagnostic and never fails the run.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>

#include "maxstab/bounds.hpp"
#include "maxstab/config.hpp"
#include "maxstab/manufactured.hpp"
#include "maxstab/mollifier.hpp"
#include "maxstab/morawetz.hpp"
#include "maxstab/sharpness.hpp"
#include "maxstab/sweep.hpp"
#include "support/shooting_oracle.hpp"

using namespace maxstab;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, double a) {
  char buf[96];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

std::string config_dir() {
#ifdef MAXSTAB_CONFIG_DIR
  return MAXSTAB_CONFIG_DIR;
#else
  return "configs";
#endif
}

Vec3 random_point(std::mt19937_64& rng, double radius) {
  std::normal_distribution<double> nd;
  std::uniform_real_distribution<double> ur(0.0, 1.0);
  return radius * std::cbrt(ur(rng)) * Vec3(nd(rng), nd(rng), nd(rng)).normalized();
}

Outcome integrated_identity() {
  double worst = 0.0, min_drop = 1e300;
  for (int t = 0; t < 3; ++t) {
    const ManufacturedField mf = make_manufactured(manufactured_trio(t, integrated_trio_wavenumber(t)));
    const double base = integrated_identity_residual(mf, 1.0, ball_rule(1.0), sphere_rule(1.0)).residual;
    const double fine =
        integrated_identity_residual(mf, 1.0, ball_rule(1.0, 2 * kDefaultNr, 2 * kDefaultNphi, 2 * kDefaultNtheta),
                                     sphere_rule(1.0, 2 * kDefaultNphi, 2 * kDefaultNtheta))
            .residual;
    worst = std::max(worst, base);
    min_drop = std::min(min_drop, base / std::max(fine, 1e-300));
  }
  return {worst < 1e-8 && min_drop >= 100.0,
          fmt("max residual %.3e", worst) + fmt(", min refinement drop %.3g", min_drop)};
}

Outcome pointwise_identity() {
  std::mt19937_64 rng(101);
  double min_order = 1e300, max_order = 0.0;
  for (int t = 0; t < 3; ++t) {
    const ManufacturedField mf = make_manufactured(manufactured_trio(t, 5.0));
    for (int k = 0; k < 5; ++k) {
      const Vec3 x = random_point(rng, 0.8);
      const double r4 = pointwise_identity_residual(mf, x, 4e-3).abs_residual;
      const double r2 = pointwise_identity_residual(mf, x, 2e-3).abs_residual;
      const double r1 = pointwise_identity_residual(mf, x, 1e-3).abs_residual;
      for (double o : {std::log2(r4 / r2), std::log2(r2 / r1)}) {
        min_order = std::min(min_order, o);
        max_order = std::max(max_order, o);
      }
    }
  }
  const PointwiseResidual c =
      pointwise_identity_residual(make_manufactured(constant_field_def(0.7)), Vec3(0.3, -0.2, 0.5));
  const bool exact = c.lhs == 0.0 && std::abs(c.divQ_fd + c.rhs_nondiv) < 1e-12;
  return {min_order > 3.75 && max_order < 4.25 && exact,
          fmt("observed order in [%.3f, ", min_order) + fmt("%.3f]", max_order) +
              (exact ? ", constant field exact" : ", constant field NOT exact")};
}

Outcome algebraic_identities() {
  std::mt19937_64 rng(202);
  std::normal_distribution<double> nd;
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const CVec3 v(cd(nd(rng), nd(rng)), cd(nd(rng), nd(rng)), cd(nd(rng), nd(rng)));
    Mat3 B;
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b) B(a, b) = nd(rng);
    const Mat3 alpha = B * B.transpose() + 0.1 * Mat3::Identity();
    const Vec3 n = Vec3(nd(rng), nd(rng), nd(rng)).normalized();
    worst = std::max(worst, normal_tangent_check(v, alpha, n, Vec3(nd(rng), nd(rng), nd(rng))));
  }
  double min_rem = 1e300;
  int samples = 0;
  for (int t = 0; t < 3; ++t) {
    const ManufacturedField mf = make_manufactured(manufactured_trio(t, 5.0));
    for (int k = 0; k < 20; ++k, ++samples) {
      const SecondIdentityResult r = second_identity_residual(mf, random_point(rng, 0.9), 1.3, 0.8);
      min_rem = std::min({min_rem, r.remainder_E, r.remainder_H});
    }
  }
  return {worst < 1e-12 && min_rem >= 0.0, fmt("normal/tangential max residual %.3e", worst) +
                                              fmt(", min remainder %.3e", min_rem) + " over " +
                                              std::to_string(samples) + " samples"};
}

Outcome mie_oracle() {
  LayeredMedium m;
  m.radii = {0.6, 1.0};
  m.eps = {2.5, 0.7};
  m.mu = {1.3, 0.9};
  const oracle::Layers L{m.radii, m.eps, m.mu, m.eps0, m.mu0};
  double worst = 0.0;
  for (double w : {1.0, 2.0, 4.0}) {
    const auto o = solve_orders(m, w, 20);
    for (int n = 1; n <= 20; ++n) {
      const auto [a, b] = oracle::coefficients(L, w, n);
      worst = std::max(worst, std::abs(o[n].a - a) / std::abs(a));
      worst = std::max(worst, std::abs(o[n].b - b) / std::abs(b));
    }
  }
  double uniform = 0.0;
  LayeredMedium u;
  u.radii = {1.0};
  u.eps = {1.0};
  u.mu = {1.0};
  for (double w : {1.0, 2.0, 4.0})
    for (const auto& o : solve_orders(u, w, 20)) uniform = std::max({uniform, std::abs(o.a), std::abs(o.b)});
  return {worst < 1e-6 && uniform < 1e-14,
          fmt("max relative deviation %.3e", worst) + fmt(", uniform max |a_n|,|b_n| %.3e", uniform)};
}

Outcome flux_positivity() {
  const LayeredMedium m = example1_medium(0.5, 0.5, 1.0);
  const double R = 2.0;
  double worst = 1e300;
  bool ok = true;
  for (double w : {0.5, 1.0, 2.0, 4.0, 8.0, 16.0, 32.0}) {
    const MultipoleSolution sol = solve_layered(m, {Vec3::UnitZ(), Vec3::UnitX(), w});
    const SphereRule rule = sphere_rule(R, std::max(64, 2 * sol.N), std::max(128, 4 * sol.N));
    const FluxResult f = boundary_flux(sol, R, R * std::sqrt(m.eps0 * m.mu0), rule);
    const double normalized = f.scale > 0.0 ? f.value / f.scale : 0.0;
    worst = std::min(worst, normalized);
    ok = ok && f.value >= -1e-9 * f.scale;
  }
  return {ok, fmt("min flux / field scale %.3e over 7 frequencies", worst)};
}

SweepConfig monotone_config() { return load_config(config_dir() + "/monotone_ball.json"); }

Outcome bound_verification() {
  const SweepConfig cfg = monotone_config();
  const SweepResult res = run_sweep(cfg);
  int passed = 0, total = 0;
  double min_margin = 1e300;
  for (const auto& row : res.rows) {
    ++total;
    passed += row.report.pass && row.report.margin >= 0.0 ? 1 : 0;
    min_margin = std::min(min_margin, row.report.margin);
  }
  const bool constant_ok = thm22_constant(1, 1, 1, 1) == 32.0 && rhs_thm22(1, 1, 1, 1, 0.5, 0.5) == 32.0;
  const bool seven = cfg.omegas.size() == 7;
  return {passed == total && total == 14 && constant_ok && seven && res.monotone,
          std::to_string(passed) + "/" + std::to_string(total) + " rows pass" + fmt(", min margin %.3e", min_margin) +
              (constant_ok ? ", constant(1,1,1,1) = 32" : ", constant mismatch")};
}

Outcome nonmonotone_contrast() {
  const double mono_max = [] {
    const SweepResult r = run_sweep(monotone_config());
    return std::max(r.max_ratio(BoundId::Thm22), r.max_ratio(BoundId::Scat));
  }();
  const SweepConfig cfg = load_config(config_dir() + "/nonmonotone_ball.json");
  const SweepResult res = run_sweep(cfg);
  double best = 0.0, best_omega = 0.0;
  for (const auto& row : res.rows) {
    if (row.error || row.report.omega > 64.0) continue;
    if (row.report.ratio() > best) {
      best = row.report.ratio();
      best_omega = row.report.omega;
    }
  }
  const double factor = mono_max > 0.0 ? best / mono_max : 0.0;
  std::string detail = fmt("max ratio %.4g", best) + fmt(" at omega %.6f", best_omega) +
                       fmt(", monotone max %.4g", mono_max) + fmt(", factor %.4g", factor);
  if (factor < 10.0)
    detail += "; no quasi-resonance found, try a smaller refine.scan_step or a larger refine.max_omega";
  return {factor >= 10.0, detail};
}

Outcome sharpness() {
  CutoffFamily fam;
  const double exact = j0_ratio_exact(1.0, 1.0, 1.0);
  const double ratio = sharpness_ratio(fam);
  const double rel = std::abs(ratio - exact) / exact;
  CutoffFamily fam2 = fam;
  fam2.R = 2.0;
  const double scaling = sharpness_ratio(fam2) / ratio;
  CutoffFamily bump = fam;
  bump.kind = CutoffKind::SmoothBump;
  const auto probe = omega_independence_probe(bump, {1.0, 10.0, 100.0}, ball_rule(1.0));
  double spread = 0.0;
  for (const auto& row : probe)
    for (double v : {std::abs(row.norms.E - probe[0].norms.E) / probe[0].norms.E,
                     std::abs(row.norms.H - probe[0].norms.H) / probe[0].norms.H,
                     std::abs(row.norms.J - probe[0].norms.J) / probe[0].norms.J,
                     std::abs(row.norms.K - probe[0].norms.K) / probe[0].norms.K})
      spread = std::max(spread, v);
  const bool bracket = ratio >= 1.0 / (pi * pi) && ratio <= 32.0;
  return {rel < 1e-6 && bracket && std::abs(scaling - 4.0) < 1e-8 && spread < 1e-10,
          fmt("j0 ratio %.13f", ratio) + fmt(" (rel err %.2e)", rel) + fmt(", R scaling %.10f", scaling) +
              fmt(", bump norm spread %.2e", spread)};
}

Outcome mollifier() {
  int pairs_ok = 0;
  bool decreasing = true;
  for (const CoeffProfile& p : {example1_profile(0.5, 0.5, 1.0), example3_profile(1.0, 1.0)}) {
    MollifierConfig cfg;
    const MollifiedProfile m = spherical_mollify(p, cfg);
    const auto rays = default_ray_samples(m.profile, 125, 20240611u);
    const auto dil = default_dilations();
    if (check_radial_monotonicity(m.profile, rays, dil).pass) pairs_ok += static_cast<int>(rays.size() * dil.size());
    double prev = 1e300;
    for (double delta : {0.2, 0.1, 0.05, 0.025}) {
      MollifierConfig c;
      c.delta = delta;
      const double e = mollifier_l2_error(p, spherical_mollify(p, c), 1.0, delta);
      decreasing = decreasing && e < prev;
      prev = e;
    }
  }
  const CartesianCounterexample ce = cartesian_counterexample(0.25);
  const bool ce_ok = std::abs(ce.value_at_origin - 0.75) <= 1e-6 && std::abs(ce.value_at_half - 0.5) <= 1e-6;
  return {pairs_ok >= 2000 && decreasing && ce_ok,
          std::to_string(pairs_ok) + " monotone (ray, h) pairs over two profiles" +
              (decreasing ? ", L2 error strictly decreasing" : ", L2 error NOT decreasing") +
              fmt(", counterexample %.8f", ce.value_at_origin) + fmt(" / %.8f", ce.value_at_half)};
}

Outcome formula_checks() {
  std::mt19937_64 rng(303);
  std::uniform_real_distribution<double> u(0.1, 5.0);
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    CoeffSummary s;
    s.eps0 = s.eps_max = u(rng);
    s.mu0 = s.mu_max = u(rng);
    const double R = u(rng), w = u(rng), J = u(rng), K = u(rng);
    const double a = rhs_thm21(s, R, w, J, K), b = rhs_thm22(s.eps0, s.mu0, R, w, J, K);
    worst = std::max(worst, std::abs(a - b) / b);
  }
  const double mt = m_theta(1.0, 1.0);
  const double imp = rhs_impedance(CoeffSummary{}, 1.0, 1.0, mt, 1.0, 1.0, 0.0, 0.0);
  return {worst <= 1e-14 && mt == 4.0 && imp == 136.0,
          fmt("max relative thm21/thm22 gap %.2e", worst) + fmt(", M_theta %.15g", mt) +
              fmt(", impedance rhs %.15g", imp)};
}

Outcome determinism() {
  const SweepConfig cfg = monotone_config();
  std::ostringstream a, b;
  write_sweep_csv(a, cfg, run_sweep(cfg));
  write_sweep_csv(b, cfg, run_sweep(cfg));
  return {a.str() == b.str() && !a.str().empty(),
          std::to_string(a.str().size()) + " bytes, " + (a.str() == b.str() ? "identical" : "DIFFERENT")};
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    std::function<Outcome()> run;
    double budget_s;
    bool diagnostic;
  };
  const Criterion criteria[] = {
      {1, "integrated identity", integrated_identity, 10.0, false},
      {2, "pointwise identity", pointwise_identity, 5.0, false},
      {3, "algebraic identities", algebraic_identities, 0.0, false},
      {4, "Mie oracle equivalence", mie_oracle, 30.0, false},
      {5, "boundary-flux positivity", flux_positivity, 0.0, false},
      {6, "bound verification", bound_verification, 120.0, false},
      {7, "non-monotone contrast", nonmonotone_contrast, 0.0, true},
      {8, "sharpness", sharpness, 0.0, false},
      {9, "mollifier", mollifier, 0.0, false},
      {10, "bound formula cross-checks", formula_checks, 0.0, false},
      {11, "determinism", determinism, 0.0, false},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (c.budget_s > 0.0 && secs > c.budget_s) {
      o.pass = false;
      o.detail += fmt("; runtime budget %.0f s exceeded", c.budget_s);
    }
    const char* status = o.pass ? "PASS" : (c.diagnostic ? "NOT FOUND (diagnostic)" : "FAIL");
    std::printf("criterion %d: %s [%s] %s (%.2f s)\n", c.id, status, c.name, o.detail.c_str(), secs);
    std::fflush(stdout);
    if (!o.pass && !c.diagnostic) ++failed;
  }
  std::printf("%d of 11 criteria failed\n", failed);
  return failed ? 1 : 0;
}
