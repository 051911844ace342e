// SPDX-License-Identifier: Apache-2.0
#include "maxstab/suites.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <random>
#include <stdexcept>

#include "maxstab/bounds.hpp"
#include "maxstab/manufactured.hpp"
#include "maxstab/morawetz.hpp"
#include "maxstab/sharpness.hpp"

namespace maxstab {

namespace {

SuiteRow at_most(std::string id, double v, double tol) {
  return {std::move(id), v, tol, 0.0, CheckKind::AtMost, v <= tol};
}
SuiteRow at_least(std::string id, double v, double tol) {
  return {std::move(id), v, tol, 0.0, CheckKind::AtLeast, v >= tol};
}
SuiteRow near(std::string id, double v, double target, double tol) {
  return {std::move(id), v, tol, target, CheckKind::Near, std::abs(v - target) <= tol};
}

Vec3 random_point_in_ball(std::mt19937_64& rng, double radius) {
  std::normal_distribution<double> nd;
  std::uniform_real_distribution<double> ur(0.0, 1.0);
  const Vec3 d = Vec3(nd(rng), nd(rng), nd(rng)).normalized();
  return radius * std::cbrt(ur(rng)) * d;
}

void identities(std::vector<SuiteRow>& rows, unsigned seed) {
  std::mt19937_64 rng(seed);

  for (int t = 0; t < 3; ++t) {
    const ManufacturedField mf = make_manufactured(manufactured_trio(t, integrated_trio_wavenumber(t)));
    const IntegratedResidual base = integrated_identity_residual(mf, 1.0, ball_rule(1.0), sphere_rule(1.0));
    const IntegratedResidual fine = integrated_identity_residual(
        mf, 1.0, ball_rule(1.0, 2 * kDefaultNr, 2 * kDefaultNphi, 2 * kDefaultNtheta),
        sphere_rule(1.0, 2 * kDefaultNphi, 2 * kDefaultNtheta));
    rows.push_back(at_most("identities.integrated." + mf.id + ".residual", base.residual, 1e-8));
    const double drop = base.residual / std::max(fine.residual, 1e-300);
    rows.push_back(at_least("identities.integrated." + mf.id + ".refinement_drop", drop, 100.0));
  }

  {
    const ManufacturedField cf = make_manufactured(constant_field_def(0.7));
    const PointwiseResidual p = pointwise_identity_residual(cf, Vec3(0.3, -0.2, 0.5));
    rows.push_back(at_most("identities.pointwise.constant.lhs", std::abs(p.lhs), 0.0));
    rows.push_back(at_most("identities.pointwise.constant.rhs", std::abs(p.divQ_fd + p.rhs_nondiv), 1e-12));
  }

  const double hs[3] = {4e-3, 2e-3, 1e-3};
  double worst_order = 1e300, worst_res = 0.0, worst_add = 0.0, worst_rellich = 0.0;
  for (int t = 0; t < 3; ++t) {
    const ManufacturedField mf = make_manufactured(manufactured_trio(t, 5.0));
    for (int k = 0; k < 4; ++k) {
      const Vec3 x = random_point_in_ball(rng, 0.8);
      double r[3];
      for (int i = 0; i < 3; ++i) r[i] = pointwise_identity_residual(mf, x, hs[i]).abs_residual;
      worst_order = std::min({worst_order, std::log2(r[0] / r[1]), std::log2(r[1] / r[2])});
      const PointwiseResidual p = pointwise_identity_residual(mf, x, 1e-3);
      worst_res = std::max(worst_res, p.residual);
      const FieldSample s = mf.sample(x);
      const double split = rellich_lhs(s) + beta_lhs(s);
      worst_add = std::max(worst_add, std::abs(identity_lhs(s) - split) / (std::abs(identity_lhs(s)) + 1.0));
      worst_rellich = std::max(worst_rellich, rellich_identity_residual(mf, x, 1e-3).residual);
    }
  }
  rows.push_back(near("identities.pointwise.observed_order", worst_order, 4.0, 0.25));
  rows.push_back(at_most("identities.pointwise.residual_h1e-3", worst_res, 1e-7));
  rows.push_back(at_most("identities.pointwise.additivity", worst_add, 1e-12));
  rows.push_back(at_most("identities.rellich.residual", worst_rellich, 1e-7));

  {
    std::normal_distribution<double> nd;
    double worst = 0.0;
    for (int i = 0; i < 1000; ++i) {
      const CVec3 v(cd(nd(rng), nd(rng)), cd(nd(rng), nd(rng)), cd(nd(rng), nd(rng)));
      Mat3 B;
      for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b) B(a, b) = nd(rng);
      const Mat3 alpha = B * B.transpose() + 0.1 * Mat3::Identity();
      const Vec3 n = Vec3(nd(rng), nd(rng), nd(rng)).normalized();
      const Vec3 x(nd(rng), nd(rng), nd(rng));
      worst = std::max(worst, normal_tangent_check(v, alpha, n, x));
    }
    rows.push_back(at_most("identities.normal_tangent.max_residual", worst, 1e-12));
  }

  {
    double worst_res2 = 0.0, min_rem = 1e300;
    for (int t = 0; t < 3; ++t) {
      const ManufacturedField mf = make_manufactured(manufactured_trio(t, 5.0));
      for (int k = 0; k < 6; ++k) {
        const SecondIdentityResult r = second_identity_residual(mf, random_point_in_ball(rng, 0.9), 1.3, 0.8);
        worst_res2 = std::max(worst_res2, r.residual);
        min_rem = std::min({min_rem, r.remainder_E, r.remainder_H});
      }
    }
    rows.push_back(at_most("identities.second.residual", worst_res2, 1e-7));
    rows.push_back(at_least("identities.second.min_remainder", min_rem, 0.0));
  }

  {
    const double R = 1.0;
    const auto samples = random_impedance_traces(sphere_rule(R, 16, 32), 1.0, 4.0 * R, Mat3::Identity(),
                                                 Mat3::Identity(), 0.0, seed + 1);
    const ImpedanceResult ir = impedance_boundary_functional(samples, R);
    rows.push_back(at_least("identities.impedance.margin", ir.rhs - ir.functional, 0.0));
    rows.push_back(near("identities.impedance.m_theta", m_theta(samples), 4.0, 1e-14));
  }
}

std::vector<double> l2_errors(const CoeffProfile& p, double R) {
  std::vector<double> out;
  for (double delta : {0.2, 0.1, 0.05, 0.025}) {
    MollifierConfig cfg;
    cfg.delta = delta;
    cfg.R = R;
    out.push_back(mollifier_l2_error(p, spherical_mollify(p, cfg), R, delta));
  }
  return out;
}

void mollifier(std::vector<SuiteRow>& rows, const SuiteOptions& opt) {
  const CartesianCounterexample ce = cartesian_counterexample(0.25);
  rows.push_back(near("mollifier.cartesian.value_at_origin", ce.value_at_origin, 0.75, 1e-6));
  rows.push_back(near("mollifier.cartesian.value_at_half", ce.value_at_half, 0.5, 1e-6));

  struct Case {
    std::string name;
    CoeffProfile profile;
  };
  const Case cases[] = {{"example1", example1_profile(0.5, 0.5, 1.0)}, {"example3", example3_profile(1.0, 1.0)}};
  for (const auto& c : cases) {
    MollifierConfig cfg;
    cfg.delta = 0.05;
    cfg.R = 1.0;
    const MollifiedProfile m = spherical_mollify(c.profile, cfg);
    const std::vector<Vec3> rays = default_ray_samples(m.profile, 125, opt.seed);
    const std::vector<double> dil = default_dilations();
    const MonotonicityResult mono = check_radial_monotonicity(m.profile, rays, dil);
    const double pairs = static_cast<double>(rays.size() * dil.size());
    rows.push_back(at_least("mollifier." + c.name + ".monotone_pairs", mono.pass ? pairs : 0.0, 1000.0));
    const GammaEstimate g = gamma_lower_bound(m.profile);
    rows.push_back(at_least("mollifier." + c.name + ".gamma", g.value, 1.0 - 1e-6));
    double lo = 1e300, hi = -1e300;
    for (const Vec3& x : default_ray_samples(m.profile, 2000, opt.seed + 7)) {
      const Mat3 v = m.profile.value(x);
      lo = std::min(lo, min_eigenvalue_sym(v));
      hi = std::max(hi, max_eigenvalue_sym(v));
    }
    rows.push_back(at_least("mollifier." + c.name + ".min_eigenvalue", lo, m.f_min - 1e-12));
    rows.push_back(at_most("mollifier." + c.name + ".max_eigenvalue", hi, m.f_max + 1e-12));
    rows.push_back(near("mollifier." + c.name + ".clamp_at_origin", m.profile.value(Vec3::Zero())(0, 0), m.f_min,
                        1e-12));
    const std::vector<double> e = l2_errors(c.profile, 1.0);
    double worst_step = 0.0;
    for (std::size_t i = 1; i < e.size(); ++i) worst_step = std::max(worst_step, e[i] / e[i - 1]);
    rows.push_back(at_most("mollifier." + c.name + ".l2_error_delta_0.025", e.back(), e.front()));
    rows.push_back({"mollifier." + c.name + ".l2_successive_ratio", worst_step, 1.0, 0.0, CheckKind::AtMost,
                    worst_step < 1.0});
  }

  if (!opt.trace_path.empty()) {
    MollifierConfig cfg;
    cfg.delta = 0.05;
    cfg.R = 1.0;
    const CoeffProfile p = example1_profile(0.5, 0.5, 1.0);
    const MollifiedProfile m = spherical_mollify(p, cfg);
    std::ofstream out(opt.trace_path);
    if (!out) throw std::runtime_error("cannot write trace file '" + opt.trace_path + "'");
    write_trace_csv(out, radial_trace(p, m.profile, Vec3(1, 1, 1).normalized(), 1.2, 241));
  }
}

void sharpness(std::vector<SuiteRow>& rows) {
  CutoffFamily fam;
  const double exact = j0_ratio_exact(1.0, 1.0, 1.0);
  const double ratio = sharpness_ratio(fam);
  rows.push_back(near("sharpness.j0.ratio", ratio, exact, 1e-6 * exact));
  rows.push_back(at_least("sharpness.j0.bracket_lower", ratio, 1.0 / (pi * pi)));
  rows.push_back(at_most("sharpness.j0.bracket_upper", ratio, 32.0));
  CutoffFamily fam2 = fam;
  fam2.R = 2.0;
  rows.push_back(near("sharpness.j0.R_scaling", sharpness_ratio(fam2) / ratio, 4.0, 1e-8));
  rows.push_back(at_most("sharpness.j0.laplacian_residual", j0_laplacian_residual(fam, Vec3(0.2, 0.3, -0.4)), 1e-5));
  rows.push_back(at_most("sharpness.j0.maxwell_residual", cutoff_maxwell_residual(fam, Vec3(0.4, -0.1, 0.3)), 1e-6));

  CutoffFamily bump = fam;
  bump.kind = CutoffKind::SmoothBump;
  const auto probe = omega_independence_probe(bump, {1.0, 10.0, 100.0}, ball_rule(1.0));
  double spread = 0.0;
  for (const auto& row : probe) {
    auto rel = [](double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); };
    spread = std::max({spread, rel(row.norms.E, probe[0].norms.E), rel(row.norms.H, probe[0].norms.H),
                       rel(row.norms.J, probe[0].norms.J), rel(row.norms.K, probe[0].norms.K)});
  }
  rows.push_back(at_most("sharpness.bump.omega_spread", spread, 1e-10));
  rows.push_back(near("sharpness.thm22.constant", thm22_constant(1.0, 1.0, 1.0, 1.0), 32.0, 0.0));
}

std::string tolerance_text(const SuiteRow& r) {
  char buf[96];
  switch (r.kind) {
    case CheckKind::AtMost:
      std::snprintf(buf, sizeof buf, "<=%.6e", r.tolerance);
      break;
    case CheckKind::AtLeast:
      std::snprintf(buf, sizeof buf, ">=%.6e", r.tolerance);
      break;
    case CheckKind::Near:
      std::snprintf(buf, sizeof buf, "%.12e+-%.3e", r.target, r.tolerance);
      break;
  }
  return buf;
}

}  // namespace

std::vector<SuiteRow> run_suites(const std::string& selector, const SuiteOptions& opt) {
  const bool all = selector == "all";
  if (!all && selector != "identities" && selector != "mollifier" && selector != "sharpness")
    throw std::invalid_argument("unknown suite '" + selector + "' (expected identities, mollifier, sharpness or all)");
  std::vector<SuiteRow> rows;
  if (all || selector == "identities") identities(rows, opt.seed);
  if (all || selector == "mollifier") mollifier(rows, opt);
  if (all || selector == "sharpness") sharpness(rows);
  return rows;
}

void write_suite_csv(std::ostream& out, const std::vector<SuiteRow>& rows) {
  out << "id,value,tolerance,status\n";
  char buf[64];
  for (const auto& r : rows) {
    std::snprintf(buf, sizeof buf, "%.12e", r.value);
    out << r.id << ',' << buf << ',' << tolerance_text(r) << ',' << (r.pass ? "pass" : "fail") << "\n";
  }
}

void write_trace_csv(std::ostream& out, const std::vector<TracePoint>& trace) {
  out << "r,original,mollified\n";
  char buf[128];
  for (const auto& p : trace) {
    std::snprintf(buf, sizeof buf, "%.12e,%.12e,%.12e\n", p.r, p.original, p.mollified);
    out << buf;
  }
}

}  // namespace maxstab
