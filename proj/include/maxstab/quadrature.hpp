// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <vector>

#include "maxstab/types.hpp"

namespace maxstab {

struct GaussRule {
  std::vector<double> x, w;
};

// Gauss–Legendre nodes and weights on [-1, 1].
const GaussRule& gauss_legendre(int n);

// Gauss–Legendre rule mapped to [a, b].
GaussRule gauss_legendre(int n, double a, double b);

// Composite Gauss–Legendre rule on [a, b] with panels split at the given
// interior break points (those closer than min_gap to a neighbour are ignored).
GaussRule composite_gauss(int n, double a, double b, const std::vector<double>& breaks,
                          double min_gap = 1e-6);

// Product rule on S^2: Gauss–Legendre in cos(polar angle) times the uniform
// trapezoid rule in azimuth.
struct AngularRule {
  std::vector<double> cos_polar, w_polar;
  std::vector<double> azimuth;
  double w_azimuth = 0.0;
  int n_polar() const { return static_cast<int>(cos_polar.size()); }
  int n_azimuth() const { return static_cast<int>(azimuth.size()); }
};

AngularRule angular_rule(int n_phi, int n_theta);

// Product rule on the shell R1 <= |x| <= R2 (R1 = 0 gives a ball).
// Radial weights include the r^2 Jacobian.
struct BallRule {
  double R_inner = 0.0, R_outer = 1.0;
  GaussRule radial;
  AngularRule angular;
  int n_r_per_panel = 0;

  std::size_t size() const { return radial.x.size() * angular.cos_polar.size() * angular.azimuth.size(); }
  double total_weight() const;

  Vec3 point(std::size_t ir, std::size_t ip, std::size_t it) const {
    const double c = angular.cos_polar[ip];
    const double s = std::sqrt(std::max(0.0, 1.0 - c * c));
    const double t = angular.azimuth[it];
    return radial.x[ir] * Vec3(s * std::cos(t), s * std::sin(t), c);
  }
  double weight(std::size_t ir, std::size_t ip) const {
    return radial.w[ir] * angular.w_polar[ip] * angular.w_azimuth;
  }

  template <class F>
  void for_each_node(F&& f) const {
    for (std::size_t ir = 0; ir < radial.x.size(); ++ir)
      for (std::size_t ip = 0; ip < angular.cos_polar.size(); ++ip)
        for (std::size_t it = 0; it < angular.azimuth.size(); ++it) f(point(ir, ip, it), weight(ir, ip));
  }

  template <class F>
  double integrate(F&& f) const {
    double acc = 0.0;
    for_each_node([&](const Vec3& x, double w) { acc += w * f(x); });
    return acc;
  }
};

inline constexpr int kDefaultNr = 32;
inline constexpr int kDefaultNphi = 32;
inline constexpr int kDefaultNtheta = 64;

BallRule ball_rule(double R, int n_r = kDefaultNr, int n_phi = kDefaultNphi, int n_theta = kDefaultNtheta,
                   const std::vector<double>& breaks = {});
BallRule shell_rule(double R1, double R2, int n_r, int n_phi, int n_theta,
                    const std::vector<double>& breaks = {});

struct SphereRule {
  double R = 1.0;
  AngularRule angular;

  std::size_t size() const { return angular.cos_polar.size() * angular.azimuth.size(); }
  Vec3 point(std::size_t ip, std::size_t it) const {
    const double c = angular.cos_polar[ip];
    const double s = std::sqrt(std::max(0.0, 1.0 - c * c));
    const double t = angular.azimuth[it];
    return R * Vec3(s * std::cos(t), s * std::sin(t), c);
  }
  double weight(std::size_t ip) const { return R * R * angular.w_polar[ip] * angular.w_azimuth; }

  template <class F>
  void for_each_node(F&& f) const {
    for (std::size_t ip = 0; ip < angular.cos_polar.size(); ++ip)
      for (std::size_t it = 0; it < angular.azimuth.size(); ++it) f(point(ip, it), weight(ip));
  }

  template <class F>
  double integrate(F&& f) const {
    double acc = 0.0;
    for_each_node([&](const Vec3& x, double w) { acc += w * f(x); });
    return acc;
  }
};

SphereRule sphere_rule(double R, int n_phi = kDefaultNphi, int n_theta = kDefaultNtheta);

}  // namespace maxstab
