// SPDX-License-Identifier: Apache-2.0
#include "maxstab/sharpness.hpp"

#include <cmath>
#include <stdexcept>

#include "maxstab/bounds.hpp"
#include "maxstab/morawetz.hpp"

namespace maxstab {

void CutoffFamily::validate() const {
  if (!(R > 0.0)) throw std::invalid_argument("cutoff family: R must be positive");
  if (!(omega > 0.0)) throw std::invalid_argument("cutoff family: omega must be positive");
  if (std::abs(A.norm() - 1.0) > 1e-12 || std::abs(d.norm() - 1.0) > 1e-12 || std::abs(A.dot(d)) > 1e-12)
    throw std::invalid_argument("cutoff family: A and d must be orthonormal");
  if (kind == CutoffKind::SmoothBump && !(bump_radius > 0.0 && bump_radius < R))
    throw std::invalid_argument("cutoff family: bump radius must lie in (0, R)");
}

double cutoff_value(const CutoffFamily& f, double r) {
  if (f.kind == CutoffKind::J0Eigenfunction) {
    if (r >= f.R) return 0.0;
    const double z = pi * r / f.R;
    return z < 1e-6 ? 1.0 - z * z / 6.0 : std::sin(z) / z;
  }
  const double s = r / f.bump_radius;
  return s < 1.0 ? std::exp(1.0 - 1.0 / (1.0 - s * s)) : 0.0;
}

double cutoff_derivative(const CutoffFamily& f, double r) {
  if (f.kind == CutoffKind::J0Eigenfunction) {
    if (r >= f.R) return 0.0;
    const double a = pi / f.R, z = a * r;
    if (z < 1e-4) return -a * z / 3.0;
    return a * (z * std::cos(z) - std::sin(z)) / (z * z);
  }
  const double s = r / f.bump_radius;
  if (s >= 1.0) return 0.0;
  const double q = 1.0 - s * s;
  return std::exp(1.0 - 1.0 / q) * (-2.0 * s / (q * q)) / f.bump_radius;
}

namespace {

void plane_wave(const CutoffFamily& f, const Vec3& x, CVec3& EI, CVec3& HI) {
  const double k = f.omega * std::sqrt(f.eps0 * f.mu0);
  const cd ph = std::exp(I * (k * f.d.dot(x)));
  EI = (std::sqrt(f.mu0) * ph) * f.A.cast<cd>();
  HI = (std::sqrt(f.eps0) * ph) * f.d.cross(f.A).cast<cd>();
}

}  // namespace

CutoffSample cutoff_fields(const CutoffFamily& f, const Vec3& x) {
  CutoffSample s;
  const double r = x.norm();
  const double chi = cutoff_value(f, r);
  const double dchi = cutoff_derivative(f, r);
  if (chi == 0.0 && dchi == 0.0) return s;
  CVec3 EI, HI;
  plane_wave(f, x, EI, HI);
  s.E = chi * EI;
  s.H = chi * HI;
  const CVec3 grad = r > 0.0 ? CVec3((dchi / r) * x.cast<cd>()) : CVec3::Zero();
  s.J = ccross(grad, HI);
  s.K = ccross(grad, EI);
  return s;
}

double cutoff_maxwell_residual(const CutoffFamily& f, const Vec3& x, double h) {
  const CutoffSample s = cutoff_fields(f, x);
  const CVec3 cE = curl_fd([&](const Vec3& y) { return cutoff_fields(f, y).E; }, x, h);
  const CVec3 cH = curl_fd([&](const Vec3& y) { return cutoff_fields(f, y).H; }, x, h);
  const double r1 = (I * f.omega * f.eps0 * s.E + cH - s.J).norm();
  const double r2 = (-I * f.omega * f.mu0 * s.H + cE - s.K).norm();
  const double k = f.omega * std::sqrt(f.eps0 * f.mu0);
  const double scale = (1.0 + k) * (std::sqrt(f.mu0) + std::sqrt(f.eps0)) * (1.0 + std::abs(cutoff_value(f, x.norm())));
  return std::max(r1, r2) / scale;
}

CutoffNorms cutoff_norms(const CutoffFamily& f, const BallRule& rule) {
  f.validate();
  CutoffNorms n;
  rule.for_each_node([&](const Vec3& x, double w) {
    const CutoffSample s = cutoff_fields(f, x);
    n.E += w * f.eps0 * s.E.squaredNorm();
    n.H += w * f.mu0 * s.H.squaredNorm();
    n.J += w * s.J.squaredNorm() / f.eps0;
    n.K += w * s.K.squaredNorm() / f.mu0;
  });
  return n;
}

double sharpness_ratio(const CutoffFamily& f, const BallRule& rule) {
  const CutoffNorms n = cutoff_norms(f, rule);
  return (n.E + n.H) / (n.K + n.J);
}

double sharpness_ratio(const CutoffFamily& f) { return sharpness_ratio(f, ball_rule(f.R)); }

double j0_ratio_exact(double eps0, double mu0, double R) { return 3.0 * eps0 * mu0 * R * R / (2.0 * pi * pi); }

std::vector<OmegaProbeRow> omega_independence_probe(const CutoffFamily& fam, const std::vector<double>& omegas,
                                                    const BallRule& rule) {
  std::vector<OmegaProbeRow> rows;
  for (double w : omegas) {
    CutoffFamily f = fam;
    f.omega = w;
    OmegaProbeRow row;
    row.omega = w;
    row.norms = cutoff_norms(f, rule);
    const double rhs = rhs_thm22(f.eps0, f.mu0, f.R, w, row.norms.J, row.norms.K);
    row.bound_ratio = (row.norms.E + row.norms.H) / rhs;
    rows.push_back(row);
  }
  return rows;
}

double j0_laplacian_residual(const CutoffFamily& f, const Vec3& x, double h) {
  auto chi = [&](const Vec3& y) { return cutoff_value(f, y.norm()); };
  double lap = 0.0;
  for (int i = 0; i < 3; ++i) {
    Vec3 e = Vec3::Zero();
    e(i) = h;
    lap += (-chi(x + 2.0 * e) + 16.0 * chi(x + e) - 30.0 * chi(x) + 16.0 * chi(x - e) - chi(x - 2.0 * e)) / (12.0 * h * h);
  }
  const double a = pi / f.R;
  return std::abs(lap + a * a * chi(x));
}

}  // namespace maxstab
