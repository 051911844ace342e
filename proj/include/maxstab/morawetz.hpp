// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <functional>
#include <string>
#include <vector>

#include "maxstab/quadrature.hpp"
#include "maxstab/types.hpp"

namespace maxstab {

// Point data for the multiplier identities. Jacobians use jac(i, j) = ∂_j v_i.
// divEpsMat is the row divergence (∂_i ε_ij)_j so that
// ∇·[εE] = divEpsMat·E + tr(ε jacE).
struct FieldSample {
  Vec3 x = Vec3::Zero();
  double omega = 1.0;
  CVec3 E = CVec3::Zero(), H = CVec3::Zero();
  CVec3 curlE = CVec3::Zero(), curlH = CVec3::Zero();
  CMat3 jacE = CMat3::Zero(), jacH = CMat3::Zero();
  Mat3 eps = Mat3::Identity(), mu = Mat3::Identity();
  Mat3 depsDir = Mat3::Zero(), dmuDir = Mat3::Zero();
  Vec3 divEpsMat = Vec3::Zero(), divMuMat = Vec3::Zero();
  cd divEpsE = 0.0, divMuH = 0.0;
  double beta = 0.0;
  Vec3 gradBeta = Vec3::Zero();
};

// |∇·[εE] − (divEpsMat·E + tr(ε jacE))| and the same for μH, maximum of both.
double divergence_consistency(const FieldSample& s);

struct ManufacturedField {
  std::string id;
  std::function<FieldSample(const Vec3&)> sample;
};

Vec3 q_beta(const FieldSample& s);

// Left-hand side R_β of the first identity and its split into the Rellich
// part (β terms removed) and the β part.
double identity_lhs(const FieldSample& s);
double rellich_lhs(const FieldSample& s);
double beta_lhs(const FieldSample& s);

// Non-divergence right-hand terms P_β, with the same split.
double identity_nondiv(const FieldSample& s);
double rellich_nondiv(const FieldSample& s);
double beta_nondiv(const FieldSample& s);

// Order-4 central-difference divergence of a vector field.
double divergence_fd(const std::function<Vec3(const Vec3&)>& F, const Vec3& x, double h);
// Order-4 central-difference curl of a complex vector field.
CVec3 curl_fd(const std::function<CVec3(const Vec3&)>& F, const Vec3& x, double h);

struct PointwiseResidual {
  double lhs = 0.0;
  double rhs_nondiv = 0.0;
  double divQ_fd = 0.0;
  double residual = 0.0;  // normalized by |lhs| + |rhs| + 1
  double abs_residual = 0.0;
};

PointwiseResidual pointwise_identity_residual(const ManufacturedField& mf, const Vec3& x, double h = 1e-3);

// Rellich building block for a single field v = E with weight α = ε:
// 2Re{(∇×v)·(αv̄×x)} against its divergence form.
PointwiseResidual rellich_identity_residual(const ManufacturedField& mf, const Vec3& x, double h = 1e-3);

struct SecondIdentityResult {
  double lhs = 0.0;
  double rhs = 0.0;
  double residual = 0.0;
  double remainder_H = 0.0;  // |μ0 H×x̂ − √(ε0μ0) E|² / (2μ0)
  double remainder_E = 0.0;  // |ε0 x̂×E − √(ε0μ0) H|² / (2ε0)
};

// Second identity with constant ε0, μ0 and β = r√(ε0μ0); the sample's own
// coefficients and β are replaced.
SecondIdentityResult second_identity_residual(const ManufacturedField& mf, const Vec3& x, double eps0,
                                              double mu0, double h = 1e-3);

// 2Re{(v·x)(αv̄·n)} − (αv·v̄)(x·n) against its normal/tangential split.
double normal_tangent_check(const CVec3& v, const Mat3& alpha, const Vec3& n, const Vec3& x);

struct IntegratedResidual {
  double volume = 0.0;
  double surface = 0.0;
  double residual = 0.0;
};

// ∫_{B_R}(R_β − P_β) against the boundary integral in normal/tangential form.
IntegratedResidual integrated_identity_residual(const ManufacturedField& mf, double R, const BallRule& rule,
                                                const SphereRule& srule);

struct ImpedanceSample {
  Vec3 x, n;
  double weight = 0.0;
  CVec3 E, H;
  Mat3 eps = Mat3::Identity(), mu = Mat3::Identity();
  double beta = 0.0;
  double theta = 1.0;
  CVec3 g = CVec3::Zero();
};

struct ImpedanceResult {
  double functional = 0.0;  // I_∂Ω
  double rhs = 0.0;
  bool beta_ok = true;      // β above the threshold at every sample
  bool holds = true;        // functional <= rhs (+ tolerance)
};

// Samples on the sphere of radius R_Omega (ρ = 1).
ImpedanceResult impedance_boundary_functional(const std::vector<ImpedanceSample>& samples, double R_Omega,
                                              double rho = 1.0);

// Random traces on the sphere of srule: E and the normal part of H are
// drawn from a seeded normal distribution with complex entries, g = g_scale·(random
// tangential field), and H_T = n̂×(ϑE_T + g) so that H×n̂ − ϑE_T = g.
std::vector<ImpedanceSample> random_impedance_traces(const SphereRule& srule, double theta, double beta,
                                                     const Mat3& eps, const Mat3& mu, double g_scale,
                                                     unsigned seed);

// β threshold R_Ω(3 + 1/ρ) max{|ε|/ϑ, ϑ|μ|} at one sample (|·| the spectral norm).
double impedance_beta_threshold(const ImpedanceSample& s, double R_Omega, double rho = 1.0);

// M_ϑ = (3 + 1/ρ) max over the boundary of max{|ε|/ϑ, ϑ|μ|}.
double m_theta(double rho, double sup_value);
double m_theta(const std::vector<ImpedanceSample>& samples, double rho = 1.0);

}  // namespace maxstab
