// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "maxstab/types.hpp"

namespace maxstab {

enum class CoeffKind { Constant, RadialScalar, RadialMatrix };
enum class Smoothness { Linfty, W1infty };

// A coefficient field (permittivity or permeability) with radial structure.
// Values are SPD 3x3 matrices and equal background*I outside support_radius.
class CoeffProfile {
 public:
  using ScalarFn = std::function<double(double)>;
  using MatrixFn = std::function<Mat3(const Vec3&)>;

  static CoeffProfile constant(double background);

  // Concentric shells: value[j] on (radii[j-1], radii[j]] with radii[-1] = 0.
  // A point exactly on an interface takes the inner shell's value.
  static CoeffProfile piecewise_radial(std::vector<double> radii, std::vector<double> values,
                                       double background);

  // Isotropic f(r)*I on [0, support_radius]. df is f'(r); pass an empty
  // function to get an Linfty profile without derivative access.
  static CoeffProfile smooth_radial(ScalarFn f, ScalarFn df, double support_radius,
                                    double background);

  // General matrix-valued field. dir_derivative returns (x·∇)value and may be
  // empty. isotropic marks fields whose value is always a multiple of I and
  // depends on |x| only.
  static CoeffProfile radial_matrix(MatrixFn value, MatrixFn dir_derivative,
                                    double support_radius, double background,
                                    bool isotropic = false);

  CoeffKind kind() const { return kind_; }
  Smoothness smoothness() const { return smoothness_; }
  double background() const { return background_; }
  double support_radius() const { return support_radius_; }
  bool has_derivative() const { return smoothness_ == Smoothness::W1infty; }
  bool isotropic() const { return isotropic_; }
  bool piecewise_constant() const { return kind_ == CoeffKind::Constant || !shell_values_.empty(); }

  // Discontinuity radii (piecewise profiles) or an empty list.
  const std::vector<double>& breaks() const { return shell_radii_; }
  const std::vector<double>& shell_values() const { return shell_values_; }

  Mat3 value(const Vec3& x) const;
  Mat3 dir_derivative(const Vec3& x) const;

  // Scalar value at radius r for isotropic profiles.
  double scalar(double r) const;
  double scalar_dir_derivative(double r) const;

 private:
  CoeffProfile() = default;
  void validate_samples() const;

  CoeffKind kind_ = CoeffKind::Constant;
  Smoothness smoothness_ = Smoothness::W1infty;
  double background_ = 1.0;
  double support_radius_ = 0.0;
  bool isotropic_ = true;
  std::vector<double> shell_radii_;
  std::vector<double> shell_values_;
  ScalarFn scalar_fn_;
  ScalarFn scalar_deriv_fn_;
  MatrixFn value_fn_;
  MatrixFn deriv_fn_;
};

inline Mat3 eval_coeff(const CoeffProfile& p, const Vec3& x) { return p.value(x); }

// Homogeneous ball of radius r1 with value inner, background outside.
CoeffProfile example1_profile(double inner, double r1, double background);

// Graded shells: value_j = background*(1 - 2^-j) on B_{j/(j+1)} \ B_{(j-1)/j},
// scaled to outer radius r_outer. Shells thinner than 1e-4*r_outer are merged
// into the last retained shell.
CoeffProfile example3_profile(double background, double r_outer = 1.0);
std::vector<double> example3_radii(double r_outer = 1.0);

// Fixed probe directions for quadratic-form comparisons.
const std::vector<Vec3>& probe_directions();

std::vector<double> default_radial_grid(const CoeffProfile& p, int n = 400);

struct GammaEstimate {
  double value = 1.0;
  bool condition_holds = true;  // value > 0
  Vec3 argmin = Vec3::Zero();
};

GammaEstimate gamma_lower_bound(const CoeffProfile& p, const std::vector<double>& radial_grid,
                                const std::vector<Vec3>& direction_grid);
GammaEstimate gamma_lower_bound(const CoeffProfile& p);

struct MonotonicityWitness {
  Vec3 x;
  double h = 0.0;
  Vec3 v;
  double deficit = 0.0;
};

struct MonotonicityResult {
  bool pass = true;
  std::optional<MonotonicityWitness> witness;
  long checks = 0;
};

MonotonicityResult check_radial_monotonicity(const CoeffProfile& p, const std::vector<Vec3>& ray_samples,
                                             const std::vector<double>& dilation_factors,
                                             double tol = 1e-10);

// Random ray points and dilations covering the support of p.
std::vector<Vec3> default_ray_samples(const CoeffProfile& p, int count, unsigned seed);
std::vector<double> default_dilations();
MonotonicityResult check_radial_monotonicity(const CoeffProfile& p);

struct CoeffSummary {
  double eps0 = 1.0, mu0 = 1.0;
  double eps_min = 1.0, eps_max = 1.0, mu_min = 1.0, mu_max = 1.0;
  double gamma_eps = 1.0, gamma_mu = 1.0;
  double eps_star = 1.0, mu_star = 1.0;
  bool gamma_valid = true;
  bool eps_star_valid = true, mu_star_valid = true;
  bool eps_monotone = true, mu_monotone = true;
  std::string notes;
};

CoeffSummary summarize(const CoeffProfile& eps, const CoeffProfile& mu);

}  // namespace maxstab
