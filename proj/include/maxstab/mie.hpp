// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "maxstab/coefficients.hpp"
#include "maxstab/quadrature.hpp"
#include "maxstab/types.hpp"

namespace maxstab {

// Concentric isotropic shells. Shell j occupies (radii[j-1], radii[j]] and
// the exterior |x| > radii.back() carries (eps0, mu0).
struct LayeredMedium {
  std::vector<double> radii;
  std::vector<double> eps, mu;
  double eps0 = 1.0, mu0 = 1.0;
  int truncation_hint = 0;  // minimum multipole order, 0 for automatic

  void validate() const;
  double outer_radius() const { return radii.empty() ? 0.0 : radii.back(); }
  CoeffProfile eps_profile() const;
  CoeffProfile mu_profile() const;
  // Merge adjacent shells with identical parameters and drop outer shells
  // that coincide with the exterior.
  LayeredMedium simplified() const;
};

LayeredMedium example1_medium(double eps_in, double mu_in, double r1, double eps0 = 1.0, double mu0 = 1.0);
LayeredMedium example3_medium(double eps0 = 1.0, double mu0 = 1.0, bool layered_mu = true, double r_outer = 1.0);

struct PlaneWaveIncidence {
  Vec3 d = Vec3::UnitZ();
  Vec3 A = Vec3::UnitX();
  double omega = 1.0;
  void validate() const;
};

class MieTruncationError : public std::runtime_error {
 public:
  MieTruncationError(const std::string& what, double tail) : std::runtime_error(what), tail_(tail) {}
  double tail() const { return tail_; }

 private:
  double tail_;
};

struct MieOptions {
  double tail_tolerance = 1e-12;
  double regular_tail_tolerance = 1e-13;
  int order_cap = 256;
};

// Coefficients for one multipole order. Region j (0-based, j = L is the
// exterior) carries f = te_reg j_n(k r) + te_out h_n(k r) for the transverse
// electric channel and g = tm_reg j_n + tm_out h_n for the transverse magnetic
// channel. The exterior regular parts equal 1 (the incident wave).
struct OrderCoefficients {
  int n = 0;
  std::vector<cd> te_reg, te_out, tm_reg, tm_out;
  cd a, b;  // exterior scattering coefficients: tm_out = -a, te_out = -b
};

// Region wavenumbers k_j = omega sqrt(eps_j mu_j); last entry is the exterior.
std::vector<double> region_wavenumbers(const LayeredMedium& m, double omega);

std::vector<OrderCoefficients> solve_orders(const LayeredMedium& m, double omega, int order_max);

struct MultipoleSolution {
  LayeredMedium medium;  // simplified
  PlaneWaveIncidence inc;
  int N = 0;
  double tail = 0.0;
  std::vector<double> k, mu;         // per region, exterior last
  std::vector<OrderCoefficients> orders;  // index n = 0..N, entry 0 unused
  Vec3 e1, e2, e3;                   // A, d x A, d

  std::vector<cd> a_coeffs() const;
  std::vector<cd> b_coeffs() const;
  int region_of(double r) const;
};

MultipoleSolution solve_layered(const LayeredMedium& medium, const PlaneWaveIncidence& inc,
                                const MieOptions& opt = {});

enum class FieldPart { Total, Scattered, Incident };

struct FieldPair {
  CVec3 E = CVec3::Zero();
  CVec3 H = CVec3::Zero();
};

FieldPair incident_fields(const PlaneWaveIncidence& inc, double eps0, double mu0, const Vec3& x);
FieldPair eval_fields(const MultipoleSolution& sol, const Vec3& x, FieldPart part = FieldPart::Total);

// Far-field amplitude F with E^S(r x̂) = e^{ikr}/r F(x̂) + O(r^-2).
CVec3 far_field(const MultipoleSolution& sol, const Vec3& xhat);

double extinction_efficiency(const MultipoleSolution& sol);
double scattering_efficiency(const MultipoleSolution& sol);

struct EnergyPair {
  double E = 0.0;  // ∫ εE·Ē
  double H = 0.0;  // ∫ μH·H̄
};

EnergyPair weighted_energy(const MultipoleSolution& sol, const CoeffProfile& eps, const CoeffProfile& mu,
                           const BallRule& rule, FieldPart part = FieldPart::Total);

// Energies of a·E^T + b(r)·E^I (and likewise H). The cutoff construction
// chi E^I + E^S equals a = 1, b = chi - 1.
EnergyPair weighted_energy_combined(const MultipoleSolution& sol, const CoeffProfile& eps,
                                    const CoeffProfile& mu, const BallRule& rule,
                                    const std::function<double(double)>& incident_weight);

// Energies with inverse weights, ∫ ε^{-1} v·v̄, for the incident field.
EnergyPair incident_inverse_energy(const PlaneWaveIncidence& inc, double eps0, double mu0,
                                   const CoeffProfile& eps, const CoeffProfile& mu, const BallRule& rule);

struct FluxResult {
  double value = 0.0;
  double scale = 0.0;  // R ∫ (ε0|E|² + μ0|H|²) over the sphere
};

// ∫_{∂B_R} Q_β·x̂ for the chosen field part (the scattered field radiates).
FluxResult boundary_flux(const MultipoleSolution& sol, double R, double beta, const SphereRule& rule,
                         FieldPart part = FieldPart::Scattered);

// Default rule for energies on B_R resolving the solution's wavenumbers.
BallRule energy_rule(const MultipoleSolution& sol, double R, int n_r, int n_phi, int n_theta,
                     const std::vector<double>& extra_breaks = {});

}  // namespace maxstab
