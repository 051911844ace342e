// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <vector>

#include "maxstab/morawetz.hpp"
#include "maxstab/types.hpp"

namespace maxstab {

// φ(x) = exp(c0 + b·x + xᵀQx) with complex data (Q symmetric). The atom
// contributes ∇φ × curl_dir + grad_coef ∇φ to a vector field.
struct ExpQuadAtom {
  cd c0 = 0.0;
  CVec3 b = CVec3::Zero();
  CMat3 Q = CMat3::Zero();
  CVec3 curl_dir = CVec3::Zero();
  cd grad_coef = 0.0;
};

// v(x) = constant + linear·x + Σ atoms.
struct VectorFieldDef {
  CVec3 constant = CVec3::Zero();
  CMat3 linear = CMat3::Zero();
  std::vector<ExpQuadAtom> atoms;

  // Value and Jacobian jac(i, j) = ∂_j v_i.
  void eval(const Vec3& x, CVec3& v, CMat3& jac) const;
};

// ε(x) = (1 + s2 r²) I + t_amp exp(-t_rate r²) M0 with M0 symmetric PSD.
struct MatrixCoeffDef {
  double scale = 1.0;
  double s2 = 0.0;
  double t_amp = 0.0;
  double t_rate = 1.0;
  Mat3 M0 = Mat3::Zero();

  // Value, (x·∇)ε and the row divergence (∂_i ε_ij)_j.
  void eval(const Vec3& x, Mat3& value, Mat3& dir, Vec3& rowdiv) const;
};

// β(x) = b0 + b1·x + b2 |x|².
struct BetaDef {
  double b0 = 0.0;
  Vec3 b1 = Vec3::Zero();
  double b2 = 0.0;
};

struct ManufacturedDef {
  std::string id;
  double omega = 1.0;
  VectorFieldDef E, H;
  MatrixCoeffDef eps, mu;
  BetaDef beta;
};

FieldSample manufactured_sample(const ManufacturedDef& def, const Vec3& x);
ManufacturedField make_manufactured(const ManufacturedDef& def);

// Smooth trios on B_1 (index 0, 1 or 2). Each mixes Gaussian-damped waves
// with the given wavenumber along different directions, with anisotropic ε, μ
// and a quadratic β.
ManufacturedDef manufactured_trio(int index, double wavenumber);

// Wavenumbers at which the default ball rule on B_1 is accurate but not yet
// at roundoff, so quadrature refinement is observable.
double integrated_trio_wavenumber(int index);

// E = e1, H = e2, ε = μ = I, β = beta.
ManufacturedDef constant_field_def(double beta = 1.0);

// Plane wave √μ0 A e^{ik d·x}, √ε0 (d×A) e^{ik d·x} with k = ω√(ε0μ0).
ManufacturedDef plane_wave_def(double eps0, double mu0, const Vec3& d, const Vec3& A, double omega);

}  // namespace maxstab
