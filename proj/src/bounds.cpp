// SPDX-License-Identifier: Apache-2.0
#include "maxstab/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace maxstab {

namespace {

double branch(double c, double R, double a, double low) { return std::max(c * R * R * a, low); }

}  // namespace

double rhs_thm21(const CoeffSummary& s, double R, double omega, double J2, double K2, SourceFlags f) {
  const double c = (f.J_zero || f.K_zero) ? 4.0 : 8.0;
  const double w2 = omega * omega;
  const double em = s.eps_max * s.mu_max, e0 = s.eps0 * s.mu0;
  const double cJ = 2.0 * branch(c, R, em / s.gamma_mu + e0 / s.gamma_eps, s.gamma_eps / w2);
  const double cK = 2.0 * branch(c, R, em / s.gamma_eps + e0 / s.gamma_mu, s.gamma_mu / w2);
  return cJ * J2 + cK * K2;
}

double rhs_thm21(const CoeffSummary& s, double R, double omega, double J2, double K2) {
  return rhs_thm21(s, R, omega, J2, K2, SourceFlags::from_norms(J2, K2));
}

double thm22_constant(double eps0, double mu0, double R, double omega, bool single_source) {
  return 2.0 * branch(single_source ? 8.0 : 16.0, R, eps0 * mu0, 1.0 / (omega * omega));
}

double rhs_thm22(double eps0, double mu0, double R, double omega, double J2, double K2, SourceFlags f) {
  return thm22_constant(eps0, mu0, R, omega, f.J_zero || f.K_zero) * (J2 + K2);
}

double rhs_thm22(double eps0, double mu0, double R, double omega, double J2, double K2) {
  return rhs_thm22(eps0, mu0, R, omega, J2, K2, SourceFlags::from_norms(J2, K2));
}

double rhs_weighted_hdiv(const CoeffSummary& s, double R, double omega, const HdivNorms& n) {
  const double c = std::sqrt(s.eps0 * s.mu0);
  const double tE = n.K_eps + c * n.J_epsinv + n.div_J / (omega * std::sqrt(s.eps_min));
  const double tH = n.J_mu + c * n.K_muinv + n.div_K / (omega * std::sqrt(s.mu_min));
  return 4.0 * R * R * (tE * tE / s.gamma_eps + tH * tH / s.gamma_mu);
}

double rhs_unweighted(const CoeffSummary& s, double R, double omega, double J2, double K2) {
  if (!s.eps_star_valid || !s.mu_star_valid || !(s.eps_star > 0.0) || !(s.mu_star > 0.0))
    throw std::domain_error("unweighted hypothesis violated: eps_star and mu_star must be positive");
  const double w2 = omega * omega;
  const double e0 = s.eps0 * s.mu0;
  const double re = s.eps_max / s.eps_min, rm = s.mu_max / s.mu_min;
  const double cJ = 2.0 * std::max(8.0 * R * R * (s.mu_max * s.mu_max / s.mu_star * re + e0 / s.eps_star * re),
                                   s.eps_star / (s.eps_min * s.eps_min * w2));
  const double cK = 2.0 * std::max(8.0 * R * R * (s.eps_max * s.eps_max / s.eps_star * rm + e0 / s.mu_star * rm),
                                   s.mu_star / (s.mu_min * s.mu_min * w2));
  return cJ * J2 + cK * K2;
}

double rhs_scattering(const CoeffSummary& s, double R, double R_scat, double omega, const IncidentNorms& n) {
  if (!(R > R_scat)) throw std::invalid_argument("rhs_scattering: need R > R_scat");
  const double w2 = omega * omega;
  const double em = s.eps_max * s.mu_max, e0 = s.eps0 * s.mu0;
  const double cH = branch(8.0, R, em / s.gamma_mu + e0 / s.gamma_eps, s.gamma_eps / w2);
  const double cE = branch(8.0, R, em / s.gamma_eps + e0 / s.gamma_mu, s.gamma_mu / w2);
  const double d = R - R_scat;
  return 2.0 * s.gamma_eps * n.E_eps + 2.0 * s.gamma_mu * n.H_mu +
         4.0 / (d * d) * (cH * n.H_shell_epsinv + cE * n.E_shell_muinv);
}

double rhs_impedance(const CoeffSummary& s, double R_Omega, double rho, double M_theta, double omega, double J2,
                     double K2, double G2, bool K_zero) {
  if (!(rho > 0.0 && rho <= 1.0)) throw std::invalid_argument("rhs_impedance: rho must lie in (0, 1]");
  const double c = K_zero ? 4.0 : 8.0;
  const double w2 = omega * omega;
  const double em = s.eps_max * s.mu_max, m2 = M_theta * M_theta;
  const double cJ = 2.0 * branch(c, R_Omega, em / s.gamma_mu + m2 / s.gamma_eps, s.gamma_eps / w2);
  const double cK = 2.0 * branch(c, R_Omega, em / s.gamma_eps + m2 / s.gamma_mu, s.gamma_mu / w2);
  return cJ * J2 + cK * K2 + 4.0 * R_Omega * M_theta * G2;
}

double rhs_impedance(const CoeffSummary& s, double R_Omega, double rho, double M_theta, double omega, double J2,
                     double K2, double G2) {
  return rhs_impedance(s, R_Omega, rho, M_theta, omega, J2, K2, G2, K2 == 0.0);
}

std::string to_string(BoundId id) {
  switch (id) {
    case BoundId::Thm21: return "thm21";
    case BoundId::Thm22: return "thm22";
    case BoundId::WeightedHdiv: return "weighted_hdiv";
    case BoundId::Unweighted: return "unweighted";
    case BoundId::Scat: return "scat";
    case BoundId::Impedance: return "impedance";
  }
  return "unknown";
}

BoundId bound_id_from_string(const std::string& s) {
  for (BoundId id : {BoundId::Thm21, BoundId::Thm22, BoundId::WeightedHdiv, BoundId::Unweighted, BoundId::Scat,
                     BoundId::Impedance})
    if (to_string(id) == s) return id;
  throw std::invalid_argument("unknown bound id '" + s + "'");
}

bool bound_passes(double lhs, double rhs) { return rhs - lhs >= -1e-9 * rhs; }

double cutoff_chi(double r, double R, double R_scat) {
  return std::clamp((R - r) / (R - R_scat), 0.0, 1.0);
}

CutoffSourceNorms cutoff_source_norms(const MultipoleSolution& sol, const CoeffProfile& eps, const CoeffProfile& mu,
                                      double R, double R_scat, const BoundQuadrature& q) {
  if (!(R > R_scat)) throw std::invalid_argument("cutoff sources: need R > R_scat");
  CutoffSourceNorms out;
  const BallRule rule = shell_rule(R_scat, R, q.n_r, q.n_phi, q.n_theta);
  const double g = -1.0 / (R - R_scat);
  rule.for_each_node([&](const Vec3& x, double w) {
    const FieldPair f = incident_fields(sol.inc, sol.medium.eps0, sol.medium.mu0, x);
    const CVec3 grad = (g * x.normalized()).cast<cd>();
    out.J_epsinv += w * quad_form(eps.value(x).inverse(), ccross(grad, f.H));
    out.K_muinv += w * quad_form(mu.value(x).inverse(), ccross(grad, f.E));
  });
  return out;
}

IncidentNorms incident_norms(const MultipoleSolution& sol, const CoeffProfile& eps, const CoeffProfile& mu, double R,
                             double R_scat, const BoundQuadrature& q) {
  if (!(R > R_scat)) throw std::invalid_argument("incident norms: need R > R_scat");
  IncidentNorms n;
  const BallRule ball = energy_rule(sol, R, q.n_r, q.n_phi, q.n_theta, {R_scat});
  const EnergyPair e = weighted_energy(sol, eps, mu, ball, FieldPart::Incident);
  n.E_eps = e.E;
  n.H_mu = e.H;
  const BallRule shell = shell_rule(R_scat, R, q.n_r, q.n_phi, q.n_theta);
  shell.for_each_node([&](const Vec3& x, double w) {
    const FieldPair f = incident_fields(sol.inc, sol.medium.eps0, sol.medium.mu0, x);
    n.H_shell_epsinv += w * quad_form(eps.value(x).inverse(), f.H);
    n.E_shell_muinv += w * quad_form(mu.value(x).inverse(), f.E);
  });
  return n;
}

BoundReport verify_transmission_bound(const MultipoleSolution& sol, const CoeffSummary& summary, double R,
                                      double R_scat, BoundId id, const BoundQuadrature& q) {
  if (!(R > R_scat)) throw std::invalid_argument("verify_transmission_bound: need R > R_scat");
  if (sol.medium.outer_radius() > R_scat * (1.0 + 1e-12))
    throw std::invalid_argument("verify_transmission_bound: R_scat must contain the scatterer");
  const CoeffProfile eps = sol.medium.eps_profile(), mu = sol.medium.mu_profile();
  BoundReport rep;
  rep.omega = sol.inc.omega;
  rep.bound_id = id;
  rep.summary = summary;
  rep.monotone = summary.eps_monotone && summary.mu_monotone;
  rep.n_trunc = sol.N;
  rep.tail = sol.tail;
  std::ostringstream notes;
  if (!rep.monotone) notes << "non-monotone medium;";
  const BallRule ball = energy_rule(sol, R, q.n_r, q.n_phi, q.n_theta, {R_scat});
  switch (id) {
    case BoundId::Thm22: {
      const EnergyPair e =
          weighted_energy_combined(sol, eps, mu, ball, [&](double r) { return cutoff_chi(r, R, R_scat) - 1.0; });
      rep.lhs_E = e.E;
      rep.lhs_H = e.H;
      rep.lhs = e.E + e.H;
      const CutoffSourceNorms s = cutoff_source_norms(sol, eps, mu, R, R_scat, q);
      rep.rhs = rhs_thm22(summary.eps0, summary.mu0, R, sol.inc.omega, s.J_epsinv, s.K_muinv);
      if (summary.eps_max > summary.eps0 * (1.0 + 1e-12) || summary.mu_max > summary.mu0 * (1.0 + 1e-12))
        notes << "coefficient maximum exceeds background;";
      break;
    }
    case BoundId::Scat: {
      const EnergyPair e = weighted_energy(sol, eps, mu, ball, FieldPart::Total);
      rep.lhs_E = summary.gamma_eps * e.E;
      rep.lhs_H = summary.gamma_mu * e.H;
      rep.lhs = rep.lhs_E + rep.lhs_H;
      rep.rhs = rhs_scattering(summary, R, R_scat, sol.inc.omega, incident_norms(sol, eps, mu, R, R_scat, q));
      break;
    }
    default:
      throw std::invalid_argument("verify_transmission_bound supports thm22 and scat only");
  }
  rep.margin = rep.rhs - rep.lhs;
  rep.pass = bound_passes(rep.lhs, rep.rhs);
  rep.notes = notes.str();
  if (!rep.notes.empty() && rep.notes.back() == ';') rep.notes.pop_back();
  return rep;
}

BoundReport verify_transmission_bound(const LayeredMedium& medium, const PlaneWaveIncidence& inc, double R,
                                      double R_scat, BoundId id, const BoundQuadrature& q) {
  const MultipoleSolution sol = solve_layered(medium, inc);
  const CoeffSummary summary = summarize(medium.eps_profile(), medium.mu_profile());
  return verify_transmission_bound(sol, summary, R, R_scat, id, q);
}

}  // namespace maxstab
