// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <vector>

#include "maxstab/coefficients.hpp"

namespace maxstab {

// Spherical coordinates follow (ρ, θ, φ) with θ the azimuth and φ the polar
// angle measured from the positive x3 axis.
struct MollifierConfig {
  double delta = 0.05;
  double R = 1.0;
  int n_rho = 256;
  int n_theta = 128;
  int n_phi = 128;

  // Throws std::invalid_argument unless 0 < delta < min{1/2, R/2} and the
  // grid sizes are at least 8.
  void validate() const;
};

// C^∞ bump exp(-1/(1-|y|²)) on the unit ball (unnormalized, zero outside).
double bump_kernel(double s2);

// ρ < δ, or ρ < R with φ < δ or φ > π - δ.
bool candy_membership(const Vec3& x, const MollifierConfig& cfg);

struct MollifiedProfile {
  CoeffProfile profile = CoeffProfile::constant(1.0);
  bool input_monotone = true;
  bool axisymmetric = false;  // depends on (ρ, φ) only
  double f_min = 1.0, f_max = 1.0;
};

// Clamped transform f^★, discrete convolution with the scaled bump in
// (ρ, θ, φ) and linear pullback. Isotropic profiles use a (ρ, φ) grid since
// the azimuthal convolution acts trivially. Matrix profiles are mollified
// componentwise in the local spherical frame. Requires R at least the
// profile's support radius.
MollifiedProfile spherical_mollify(const CoeffProfile& profile, const MollifierConfig& cfg);

// Value at x of (ε * ψ_δ) for ε = 1/2 on {|x| < 1, x1 > 0} and 1 elsewhere,
// computed with a quadrature split at the plane x1 = 0.
double cartesian_mollified_value(const Vec3& x, double delta, int order = 48);

struct CartesianCounterexample {
  double value_at_origin = 0.0;
  double value_at_half = 0.0;
};

// Throws std::invalid_argument unless 0 < delta < 1/2.
CartesianCounterexample cartesian_counterexample(double delta);

// ∫_{B_R} ‖a − b‖²_F with radial panels split at r_breaks and polar panels
// split at ±cos(k δ), k = 1, 2, 3. n_azimuth = 0 selects 2*order nodes.
double l2_difference(const CoeffProfile& a, const CoeffProfile& b, double R, double delta,
                     const std::vector<double>& r_breaks, int order = 16, int n_azimuth = 0);

// ‖ε − ε_δ‖_{L²(B_R)} with breaks at the profile's interfaces and the
// clamp radii.
double mollifier_l2_error(const CoeffProfile& original, const MollifiedProfile& mollified, double R,
                          double delta);

struct TracePoint {
  double r = 0.0;
  double original = 0.0;
  double mollified = 0.0;
};

// Smallest-eigenvalue traces along the ray t·dir, t ∈ [0, r_max].
std::vector<TracePoint> radial_trace(const CoeffProfile& original, const CoeffProfile& mollified, const Vec3& dir,
                                     double r_max, int n);

}  // namespace maxstab
