// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <vector>

#include "maxstab/quadrature.hpp"
#include "maxstab/types.hpp"

namespace maxstab {

enum class CutoffKind { SmoothBump, J0Eigenfunction };

// χ times a plane wave E^I = √μ0 A e^{ik d·x}, H^I = √ε0 (d×A) e^{ik d·x},
// k = ω√(ε0μ0). The j0 cutoff is R sin(πr/R)/(πr) on B_R; the smooth bump is
// exp(1 - 1/(1 - (r/a)²)) with a = bump_radius < R.
struct CutoffFamily {
  double R = 1.0;
  Vec3 A = Vec3::UnitX();
  Vec3 d = Vec3::UnitZ();
  double omega = 1.0;
  double eps0 = 1.0, mu0 = 1.0;
  CutoffKind kind = CutoffKind::J0Eigenfunction;
  double bump_radius = 0.8;

  // Throws std::invalid_argument for non-orthonormal (A, d), R <= 0,
  // omega <= 0 or a bump radius outside (0, R).
  void validate() const;
};

double cutoff_value(const CutoffFamily& fam, double r);
double cutoff_derivative(const CutoffFamily& fam, double r);

struct CutoffSample {
  CVec3 E = CVec3::Zero(), H = CVec3::Zero(), J = CVec3::Zero(), K = CVec3::Zero();
};

CutoffSample cutoff_fields(const CutoffFamily& fam, const Vec3& x);

// max of |iωε0E + ∇×H − J| and |−iωμ0H + ∇×E − K| with order-4 difference
// curls, relative to the field scale at x.
double cutoff_maxwell_residual(const CutoffFamily& fam, const Vec3& x, double h = 1e-3);

struct CutoffNorms {
  double E = 0.0;  // ‖E‖²_{ε0}
  double H = 0.0;  // ‖H‖²_{μ0}
  double J = 0.0;  // ‖J‖²_{ε0⁻¹}
  double K = 0.0;  // ‖K‖²_{μ0⁻¹}
};

CutoffNorms cutoff_norms(const CutoffFamily& fam, const BallRule& rule);

// (‖E‖²_ε + ‖H‖²_μ) / (‖K‖²_{μ⁻¹} + ‖J‖²_{ε⁻¹}).
double sharpness_ratio(const CutoffFamily& fam, const BallRule& rule);
double sharpness_ratio(const CutoffFamily& fam);

// 3ε0μ0R²/(2π²) for the j0 cutoff.
double j0_ratio_exact(double eps0, double mu0, double R);

struct OmegaProbeRow {
  double omega = 0.0;
  CutoffNorms norms;
  double bound_ratio = 0.0;  // lhs / rhs of the constant-coefficient bound
};

std::vector<OmegaProbeRow> omega_independence_probe(const CutoffFamily& fam, const std::vector<double>& omegas,
                                                    const BallRule& rule);

// |Δχ + (π/R)²χ| at x by an order-4 difference Laplacian.
double j0_laplacian_residual(const CutoffFamily& fam, const Vec3& x, double h = 1e-3);

}  // namespace maxstab
