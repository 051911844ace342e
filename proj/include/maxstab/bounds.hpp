// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>

#include "maxstab/coefficients.hpp"
#include "maxstab/mie.hpp"

namespace maxstab {

// Which sources are identically zero. The constant 8 (16 for the constant-coefficient
// form) halves when either source vanishes.
struct SourceFlags {
  bool J_zero = false;
  bool K_zero = false;
  static SourceFlags from_norms(double normJ2, double normK2) { return {normJ2 == 0.0, normK2 == 0.0}; }
};

// Squared norms ‖J‖²_{ε⁻¹} and ‖K‖²_{μ⁻¹}.
double rhs_thm21(const CoeffSummary& s, double R, double omega, double normJ2, double normK2, SourceFlags flags);
double rhs_thm21(const CoeffSummary& s, double R, double omega, double normJ2, double normK2);

double rhs_thm22(double eps0, double mu0, double R, double omega, double normJ2, double normK2, SourceFlags flags);
double rhs_thm22(double eps0, double mu0, double R, double omega, double normJ2, double normK2);

// The constant 2 max{16R²ε0μ0, ω⁻²} (8 instead of 16 when one source vanishes).
double thm22_constant(double eps0, double mu0, double R, double omega, bool single_source = false);

// Non-squared norms for the H(div) right-hand side.
struct HdivNorms {
  double K_eps = 0.0;      // ‖K‖_{ε}
  double J_epsinv = 0.0;   // ‖J‖_{ε⁻¹}
  double div_J = 0.0;      // ‖∇·J‖
  double J_mu = 0.0;       // ‖J‖_{μ}
  double K_muinv = 0.0;    // ‖K‖_{μ⁻¹}
  double div_K = 0.0;      // ‖∇·K‖
};

double rhs_weighted_hdiv(const CoeffSummary& s, double R, double omega, const HdivNorms& n);

// Unweighted norms ‖J‖², ‖K‖². Throws std::domain_error if ε* or μ* is not
// positive.
double rhs_unweighted(const CoeffSummary& s, double R, double omega, double normJ2, double normK2);

struct IncidentNorms {
  double E_eps = 0.0;          // ‖E^I‖²_{B_R; ε}
  double H_mu = 0.0;           // ‖H^I‖²_{B_R; μ}
  double H_shell_epsinv = 0.0; // ‖H^I‖²_{B_R \ B_Rs; ε⁻¹}
  double E_shell_muinv = 0.0;  // ‖E^I‖²_{B_R \ B_Rs; μ⁻¹}
};

// Throws std::invalid_argument if R <= R_scat.
double rhs_scattering(const CoeffSummary& s, double R, double R_scat, double omega, const IncidentNorms& n);

// normG2 = ‖ϑ^{-1/2} g‖². The 8 halves when K = 0 (taken from normK2 == 0
// unless overridden).
double rhs_impedance(const CoeffSummary& s, double R_Omega, double rho, double M_theta, double omega, double normJ2,
                     double normK2, double normG2);
double rhs_impedance(const CoeffSummary& s, double R_Omega, double rho, double M_theta, double omega, double normJ2,
                     double normK2, double normG2, bool K_zero);

enum class BoundId { Thm21, Thm22, WeightedHdiv, Unweighted, Scat, Impedance };
std::string to_string(BoundId id);
BoundId bound_id_from_string(const std::string& s);

struct BoundReport {
  double omega = 0.0;
  BoundId bound_id = BoundId::Thm22;
  double lhs = 0.0;
  double lhs_E = 0.0, lhs_H = 0.0;
  double rhs = 0.0;
  double margin = 0.0;
  bool pass = false;
  bool monotone = true;
  int n_trunc = 0;
  double tail = 0.0;
  std::string notes;
  CoeffSummary summary;

  double ratio() const { return rhs > 0.0 ? lhs / rhs : 0.0; }
};

bool bound_passes(double lhs, double rhs);

struct BoundQuadrature {
  int n_r = 24;
  int n_phi = 24;
  int n_theta = 48;
};

// Piecewise-linear cutoff: 1 on B_Rs, 0 outside B_R, linear in r between.
double cutoff_chi(double r, double R, double R_scat);

// Cutoff sources J = ∇χ×H^I, K = ∇χ×E^I with their squared weighted norms
// ‖J‖²_{ε⁻¹}, ‖K‖²_{μ⁻¹} over the shell.
struct CutoffSourceNorms {
  double J_epsinv = 0.0;
  double K_muinv = 0.0;
};
CutoffSourceNorms cutoff_source_norms(const MultipoleSolution& sol, const CoeffProfile& eps, const CoeffProfile& mu,
                                      double R, double R_scat, const BoundQuadrature& q);

IncidentNorms incident_norms(const MultipoleSolution& sol, const CoeffProfile& eps, const CoeffProfile& mu, double R,
                             double R_scat, const BoundQuadrature& q);

// Reports for a solved medium.
BoundReport verify_transmission_bound(const MultipoleSolution& sol, const CoeffSummary& summary, double R,
                                      double R_scat, BoundId id, const BoundQuadrature& q = {});

// Solves the layered problem and evaluates the requested bound. A Mie
// truncation failure propagates as MieTruncationError.
BoundReport verify_transmission_bound(const LayeredMedium& medium, const PlaneWaveIncidence& inc, double R,
                                      double R_scat, BoundId id, const BoundQuadrature& q = {});

}  // namespace maxstab
