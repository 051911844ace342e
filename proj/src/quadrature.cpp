// SPDX-License-Identifier: Apache-2.0
#include "maxstab/quadrature.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <stdexcept>

namespace maxstab {

namespace {

GaussRule compute_gauss_legendre(int n) {
  GaussRule g;
  g.x.resize(n);
  g.w.resize(n);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      if (n == 1) p0 = 1.0;
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    double p0 = 1.0, p1 = x;
    for (int k = 2; k <= n; ++k) {
      const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    dp = n * (x * p1 - p0) / (x * x - 1.0);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    g.x[i] = -x;
    g.w[i] = w;
    g.x[n - 1 - i] = x;
    g.w[n - 1 - i] = w;
  }
  if (n % 2 == 1) g.x[n / 2] = 0.0;
  return g;
}

}  // namespace

const GaussRule& gauss_legendre(int n) {
  if (n < 1) throw std::invalid_argument("gauss_legendre: need at least one node");
  static std::mutex mtx;
  static std::map<int, GaussRule> cache;
  std::lock_guard<std::mutex> lock(mtx);
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, compute_gauss_legendre(n)).first;
  return it->second;
}

GaussRule gauss_legendre(int n, double a, double b) {
  const GaussRule& ref = gauss_legendre(n);
  GaussRule g;
  g.x.resize(n);
  g.w.resize(n);
  const double half = 0.5 * (b - a), mid = 0.5 * (a + b);
  for (int i = 0; i < n; ++i) {
    g.x[i] = mid + half * ref.x[i];
    g.w[i] = half * ref.w[i];
  }
  return g;
}

GaussRule composite_gauss(int n, double a, double b, const std::vector<double>& breaks, double min_gap) {
  std::vector<double> pts{a};
  std::vector<double> inner;
  for (double t : breaks)
    if (t > a + min_gap && t < b - min_gap) inner.push_back(t);
  std::sort(inner.begin(), inner.end());
  for (double t : inner)
    if (t - pts.back() > min_gap) pts.push_back(t);
  if (b - pts.back() <= min_gap && pts.size() > 1) pts.back() = b;
  else pts.push_back(b);
  GaussRule out;
  for (std::size_t k = 0; k + 1 < pts.size(); ++k) {
    const GaussRule g = gauss_legendre(n, pts[k], pts[k + 1]);
    out.x.insert(out.x.end(), g.x.begin(), g.x.end());
    out.w.insert(out.w.end(), g.w.begin(), g.w.end());
  }
  return out;
}

AngularRule angular_rule(int n_phi, int n_theta) {
  if (n_phi < 2 || n_theta < 2) throw std::invalid_argument("angular_rule: counts must be >= 2");
  AngularRule a;
  a.cos_polar = gauss_legendre(n_phi).x;
  a.w_polar = gauss_legendre(n_phi).w;
  a.azimuth.resize(n_theta);
  for (int k = 0; k < n_theta; ++k) a.azimuth[k] = 2.0 * pi * k / n_theta;
  a.w_azimuth = 2.0 * pi / n_theta;
  return a;
}

double BallRule::total_weight() const {
  double acc = 0.0;
  for (double w : radial.w) acc += w;
  double ang = 0.0;
  for (double w : angular.w_polar) ang += w;
  return acc * ang * angular.w_azimuth * static_cast<double>(angular.azimuth.size());
}

BallRule shell_rule(double R1, double R2, int n_r, int n_phi, int n_theta, const std::vector<double>& breaks) {
  if (n_r < 2) throw std::invalid_argument("shell_rule: n_r must be >= 2");
  if (!(R2 > R1) || R1 < 0.0) throw std::invalid_argument("shell_rule: need 0 <= R1 < R2");
  BallRule b;
  b.R_inner = R1;
  b.R_outer = R2;
  b.n_r_per_panel = n_r;
  b.radial = composite_gauss(n_r, R1, R2, breaks);
  for (std::size_t i = 0; i < b.radial.x.size(); ++i) b.radial.w[i] *= b.radial.x[i] * b.radial.x[i];
  b.angular = angular_rule(n_phi, n_theta);
  return b;
}

BallRule ball_rule(double R, int n_r, int n_phi, int n_theta, const std::vector<double>& breaks) {
  return shell_rule(0.0, R, n_r, n_phi, n_theta, breaks);
}

SphereRule sphere_rule(double R, int n_phi, int n_theta) {
  SphereRule s;
  s.R = R;
  s.angular = angular_rule(n_phi, n_theta);
  return s;
}

}  // namespace maxstab
