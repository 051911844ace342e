// SPDX-License-Identifier: Apache-2.0
#include "maxstab/mollifier.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <memory>
#include <stdexcept>

#include "maxstab/quadrature.hpp"

namespace maxstab {

void MollifierConfig::validate() const {
  if (!(R > 0.0)) throw std::invalid_argument("mollifier: R must be positive");
  if (!(delta > 0.0 && delta < std::min(0.5, 0.5 * R)))
    throw std::invalid_argument("mollifier: delta must lie in (0, min{1/2, R/2})");
  if (n_rho < 8 || n_theta < 8 || n_phi < 8) throw std::invalid_argument("mollifier: grid sizes must be >= 8");
}

double bump_kernel(double s2) { return s2 < 1.0 ? std::exp(-1.0 / (1.0 - s2)) : 0.0; }

namespace {

double polar_angle(const Vec3& x) {
  const double r = x.norm();
  if (r == 0.0) return 0.0;
  return std::acos(std::clamp(x(2) / r, -1.0, 1.0));
}

double azimuth_angle(const Vec3& x) {
  double t = std::atan2(x(1), x(0));
  if (t < 0.0) t += 2.0 * pi;
  return t;
}

Vec3 spherical_point(double rho, double theta, double phi) {
  return rho * Vec3(std::sin(phi) * std::cos(theta), std::sin(phi) * std::sin(theta), std::cos(phi));
}

// Columns: radial, polar and azimuthal unit vectors.
Mat3 spherical_frame(double theta, double phi) {
  Mat3 F;
  F.col(0) = Vec3(std::sin(phi) * std::cos(theta), std::sin(phi) * std::sin(theta), std::cos(phi));
  F.col(1) = Vec3(std::cos(phi) * std::cos(theta), std::cos(phi) * std::sin(theta), -std::sin(phi));
  F.col(2) = Vec3(-std::sin(theta), std::cos(theta), 0.0);
  return F;
}

bool clamped(double rho, double phi, double delta, double R) {
  if (rho < 2.0 * delta) return true;
  return rho < R + delta && (phi <= 2.0 * delta || phi >= pi - 2.0 * delta);
}

struct KernelTap {
  int a = 0, b = 0, c = 0;  // offsets in ρ, θ, φ
  double w = 0.0;
};

std::vector<KernelTap> kernel_taps(double delta, double h_rho, double h_theta, double h_phi) {
  const int Ar = static_cast<int>(std::ceil(delta / h_rho));
  const int At = static_cast<int>(std::ceil(delta / h_theta));
  const int Ap = static_cast<int>(std::ceil(delta / h_phi));
  std::vector<KernelTap> taps;
  double total = 0.0;
  for (int a = -Ar; a <= Ar; ++a)
    for (int b = -At; b <= At; ++b)
      for (int c = -Ap; c <= Ap; ++c) {
        const double s2 = (std::pow(a * h_rho, 2) + std::pow(b * h_theta, 2) + std::pow(c * h_phi, 2)) / (delta * delta);
        const double w = bump_kernel(s2);
        if (w > 0.0) {
          taps.push_back({a, b, c, w});
          total += w;
        }
      }
  for (auto& t : taps) t.w /= total;
  return taps;
}

// Axisymmetric result on a (ρ, φ) grid.
struct AxisymmetricGrid {
  double delta, R, h_rho, h_phi, f_min, background;
  int n_rho, n_phi;
  std::vector<double> g;  // (n_rho + 1) x (n_phi + 1)

  double at(int i, int k) const { return g[static_cast<std::size_t>(i) * (n_phi + 1) + k]; }

  void locate(const Vec3& x, int& i, double& tr, int& k, double& tp) const {
    const double rho = x.norm();
    const double phi = polar_angle(x);
    const double u = rho / h_rho, v = phi / h_phi;
    i = std::clamp(static_cast<int>(std::floor(u)), 0, n_rho - 1);
    k = std::clamp(static_cast<int>(std::floor(v)), 0, n_phi - 1);
    tr = std::clamp(u - i, 0.0, 1.0);
    tp = std::clamp(v - k, 0.0, 1.0);
  }

  double value(const Vec3& x) const {
    const double rho = x.norm();
    if (rho >= R + 2.0 * delta) return background;
    if (is_candy(x)) return f_min;
    int i, k;
    double tr, tp;
    locate(x, i, tr, k, tp);
    const double lo = (1 - tp) * at(i, k) + tp * at(i, k + 1);
    const double hi = (1 - tp) * at(i + 1, k) + tp * at(i + 1, k + 1);
    return (1 - tr) * lo + tr * hi;
  }

  double dir_derivative(const Vec3& x) const {
    const double rho = x.norm();
    if (rho >= R + 2.0 * delta || is_candy(x)) return 0.0;
    int i, k;
    double tr, tp;
    locate(x, i, tr, k, tp);
    const double lo = (1 - tp) * at(i, k) + tp * at(i, k + 1);
    const double hi = (1 - tp) * at(i + 1, k) + tp * at(i + 1, k + 1);
    return rho * (hi - lo) / h_rho;
  }

  bool is_candy(const Vec3& x) const {
    const double rho = x.norm();
    if (rho < delta) return true;
    if (rho >= R) return false;
    const double phi = polar_angle(x);
    return phi < delta || phi > pi - delta;
  }
};

// General result in the local frame on a (ρ, θ, φ) grid, six components.
struct FrameGrid {
  double delta, R, h_rho, h_theta, h_phi, f_min, background;
  int n_rho, n_theta, n_phi;
  std::vector<std::array<double, 6>> g;  // index (i, j, k), θ periodic

  std::size_t idx(int i, int j, int k) const {
    j = ((j % n_theta) + n_theta) % n_theta;
    return (static_cast<std::size_t>(i) * n_theta + j) * (n_phi + 1) + k;
  }

  bool is_candy(const Vec3& x) const {
    const double rho = x.norm();
    if (rho < delta) return true;
    if (rho >= R) return false;
    const double phi = polar_angle(x);
    return phi < delta || phi > pi - delta;
  }

  static Mat3 unpack(const std::array<double, 6>& a) {
    Mat3 M;
    M << a[0], a[1], a[2], a[1], a[3], a[4], a[2], a[4], a[5];
    return M;
  }

  // Local-frame value and its ρ-slope times ρ.
  void local(const Vec3& x, Mat3& value, Mat3& slope) const {
    const double rho = x.norm();
    const double u = rho / h_rho, vt = azimuth_angle(x) / h_theta, vp = polar_angle(x) / h_phi;
    const int i = std::clamp(static_cast<int>(std::floor(u)), 0, n_rho - 1);
    const int j = static_cast<int>(std::floor(vt));
    const int k = std::clamp(static_cast<int>(std::floor(vp)), 0, n_phi - 1);
    const double tr = std::clamp(u - i, 0.0, 1.0), tt = std::clamp(vt - j, 0.0, 1.0),
                 tp = std::clamp(vp - k, 0.0, 1.0);
    Mat3 lo = Mat3::Zero(), hi = Mat3::Zero();
    for (int dj = 0; dj < 2; ++dj)
      for (int dk = 0; dk < 2; ++dk) {
        const double w = (dj ? tt : 1 - tt) * (dk ? tp : 1 - tp);
        lo += w * unpack(g[idx(i, j + dj, k + dk)]);
        hi += w * unpack(g[idx(i + 1, j + dj, k + dk)]);
      }
    value = (1 - tr) * lo + tr * hi;
    slope = rho * (hi - lo) / h_rho;
  }

  Mat3 value(const Vec3& x) const {
    if (x.norm() >= R + 2.0 * delta) return background * Mat3::Identity();
    if (is_candy(x)) return f_min * Mat3::Identity();
    Mat3 v, s;
    local(x, v, s);
    const Mat3 F = spherical_frame(azimuth_angle(x), polar_angle(x));
    return F * v * F.transpose();
  }

  Mat3 dir_derivative(const Vec3& x) const {
    if (x.norm() >= R + 2.0 * delta || is_candy(x)) return Mat3::Zero();
    Mat3 v, s;
    local(x, v, s);
    const Mat3 F = spherical_frame(azimuth_angle(x), polar_angle(x));
    return F * s * F.transpose();
  }
};

MollifiedProfile mollify_axisymmetric(const CoeffProfile& p, const MollifierConfig& cfg, double f_min) {
  auto grid = std::make_shared<AxisymmetricGrid>();
  auto& G = *grid;
  G.delta = cfg.delta;
  G.R = cfg.R;
  G.n_rho = cfg.n_rho;
  G.n_phi = cfg.n_phi;
  G.h_rho = (cfg.R + 2.0 * cfg.delta) / cfg.n_rho;
  G.h_phi = pi / cfg.n_phi;
  G.f_min = f_min;
  G.background = p.background();
  const double h_theta = 2.0 * pi / cfg.n_theta;
  const auto taps = kernel_taps(cfg.delta, G.h_rho, h_theta, G.h_phi);

  // Collapse the azimuthal offsets.
  std::vector<KernelTap> taps2;
  for (const auto& t : taps) {
    auto it = std::find_if(taps2.begin(), taps2.end(), [&](const KernelTap& u) { return u.a == t.a && u.c == t.c; });
    if (it == taps2.end()) taps2.push_back({t.a, 0, t.c, t.w});
    else it->w += t.w;
  }
  int Ar = 0;
  for (const auto& t : taps2) Ar = std::max(Ar, std::abs(t.a));
  std::vector<double> fr(cfg.n_rho + 1 + 2 * Ar);
  for (int i = -Ar; i <= cfg.n_rho + Ar; ++i) fr[i + Ar] = p.scalar(std::abs(i * G.h_rho));

  G.g.assign(static_cast<std::size_t>(cfg.n_rho + 1) * (cfg.n_phi + 1), 0.0);
  for (int i = 0; i <= cfg.n_rho; ++i)
    for (int k = 0; k <= cfg.n_phi; ++k) {
      double acc = 0.0;
      for (const auto& t : taps2) {
        const int ii = i + t.a;
        const double rho = ii * G.h_rho, phi = (k + t.c) * G.h_phi;
        acc += t.w * (clamped(rho, phi, cfg.delta, cfg.R) ? f_min : fr[ii + Ar]);
      }
      G.g[static_cast<std::size_t>(i) * (cfg.n_phi + 1) + k] = acc;
    }

  MollifiedProfile out;
  out.f_min = f_min;
  out.axisymmetric = true;
  out.profile = CoeffProfile::radial_matrix(
      [grid](const Vec3& x) { return grid->value(x) * Mat3::Identity(); },
      [grid](const Vec3& x) { return grid->dir_derivative(x) * Mat3::Identity(); }, cfg.R + 2.0 * cfg.delta,
      p.background(), false);
  return out;
}

MollifiedProfile mollify_frame(const CoeffProfile& p, const MollifierConfig& cfg, double f_min) {
  auto grid = std::make_shared<FrameGrid>();
  auto& G = *grid;
  G.delta = cfg.delta;
  G.R = cfg.R;
  G.n_rho = cfg.n_rho;
  G.n_theta = cfg.n_theta;
  G.n_phi = cfg.n_phi;
  G.h_rho = (cfg.R + 2.0 * cfg.delta) / cfg.n_rho;
  G.h_theta = 2.0 * pi / cfg.n_theta;
  G.h_phi = pi / cfg.n_phi;
  G.f_min = f_min;
  G.background = p.background();
  const auto taps = kernel_taps(cfg.delta, G.h_rho, G.h_theta, G.h_phi);
  int Ar = 0, Ap = 0;
  for (const auto& t : taps) {
    Ar = std::max(Ar, std::abs(t.a));
    Ap = std::max(Ap, std::abs(t.c));
  }
  // f^★ on the padded grid in the local frame.
  const int nr = cfg.n_rho + 1 + 2 * Ar, np = cfg.n_phi + 1 + 2 * Ap, nt = cfg.n_theta;
  std::vector<std::array<double, 6>> fs(static_cast<std::size_t>(nr) * nt * np);
  auto fidx = [&](int i, int j, int k) {
    j = ((j % nt) + nt) % nt;
    return (static_cast<std::size_t>(i + Ar) * nt + j) * np + (k + Ap);
  };
  for (int i = -Ar; i <= cfg.n_rho + Ar; ++i)
    for (int j = 0; j < nt; ++j)
      for (int k = -Ap; k <= cfg.n_phi + Ap; ++k) {
        const double rho = i * G.h_rho, theta = j * G.h_theta, phi = k * G.h_phi;
        Mat3 M;
        if (clamped(rho, phi, cfg.delta, cfg.R)) {
          M = f_min * Mat3::Identity();
        } else {
          const Mat3 F = spherical_frame(theta, phi);
          M = F.transpose() * p.value(spherical_point(rho, theta, phi)) * F;
        }
        fs[fidx(i, j, k)] = {M(0, 0), M(0, 1), M(0, 2), M(1, 1), M(1, 2), M(2, 2)};
      }
  G.g.assign(static_cast<std::size_t>(cfg.n_rho + 1) * nt * (cfg.n_phi + 1), {});
  for (int i = 0; i <= cfg.n_rho; ++i)
    for (int j = 0; j < nt; ++j)
      for (int k = 0; k <= cfg.n_phi; ++k) {
        std::array<double, 6> acc{};
        for (const auto& t : taps) {
          const auto& v = fs[fidx(i + t.a, j + t.b, k + t.c)];
          for (int c = 0; c < 6; ++c) acc[c] += t.w * v[c];
        }
        G.g[G.idx(i, j, k)] = acc;
      }
  MollifiedProfile out;
  out.f_min = f_min;
  out.profile = CoeffProfile::radial_matrix([grid](const Vec3& x) { return grid->value(x); },
                                            [grid](const Vec3& x) { return grid->dir_derivative(x); },
                                            cfg.R + 2.0 * cfg.delta, p.background(), false);
  return out;
}

}  // namespace

bool candy_membership(const Vec3& x, const MollifierConfig& cfg) {
  const double rho = x.norm();
  if (rho < cfg.delta) return true;
  if (rho >= cfg.R) return false;
  const double phi = polar_angle(x);
  return phi < cfg.delta || phi > pi - cfg.delta;
}

MollifiedProfile spherical_mollify(const CoeffProfile& p, const MollifierConfig& cfg) {
  cfg.validate();
  if (p.support_radius() > cfg.R * (1.0 + 1e-12))
    throw std::invalid_argument("mollifier: R must be at least the profile's support radius");
  const CoeffSummary s = summarize(p, p);
  const bool monotone = check_radial_monotonicity(p).pass;
  MollifiedProfile out = (p.isotropic() && p.kind() != CoeffKind::RadialMatrix)
                             ? mollify_axisymmetric(p, cfg, s.eps_min)
                             : mollify_frame(p, cfg, s.eps_min);
  out.input_monotone = monotone;
  out.f_min = s.eps_min;
  out.f_max = s.eps_max;
  return out;
}

double cartesian_mollified_value(const Vec3& x, double delta, int order) {
  auto eps = [](const Vec3& y) { return (y.norm() < 1.0 && y(0) > 0.0) ? 0.5 : 1.0; };
  std::vector<double> breaks;
  if (std::abs(x(0)) < delta) breaks.push_back(-x(0));
  const GaussRule g1 = composite_gauss(order, -delta, delta, breaks, 0.0);
  const GaussRule gr = gauss_legendre(order, 0.0, 1.0);
  const int n_alpha = 2 * order;
  double num = 0.0, den = 0.0;
  for (std::size_t a = 0; a < g1.x.size(); ++a) {
    const double y1 = g1.x[a];
    const double s = std::sqrt(std::max(0.0, delta * delta - y1 * y1));
    for (std::size_t b = 0; b < gr.x.size(); ++b) {
      const double rr = s * gr.x[b];
      const double k = bump_kernel((y1 * y1 + rr * rr) / (delta * delta));
      const double w = g1.w[a] * gr.w[b] * s * rr * (2.0 * pi / n_alpha) * k;
      for (int c = 0; c < n_alpha; ++c) {
        const double al = 2.0 * pi * c / n_alpha;
        const Vec3 y = x + Vec3(y1, rr * std::cos(al), rr * std::sin(al));
        num += w * eps(y);
        den += w;
      }
    }
  }
  return num / den;
}

CartesianCounterexample cartesian_counterexample(double delta) {
  if (!(delta > 0.0 && delta < 0.5)) throw std::invalid_argument("cartesian_counterexample: delta must lie in (0, 1/2)");
  return {cartesian_mollified_value(Vec3::Zero(), delta), cartesian_mollified_value(Vec3(0.5, 0, 0), delta)};
}

double l2_difference(const CoeffProfile& a, const CoeffProfile& b, double R, double delta,
                     const std::vector<double>& r_breaks, int order, int n_azimuth) {
  const GaussRule gr = composite_gauss(order, 0.0, R, r_breaks);
  std::vector<double> cb;
  for (int k = 1; k <= 3; ++k) {
    cb.push_back(std::cos(k * delta));
    cb.push_back(-std::cos(k * delta));
  }
  const GaussRule gc = composite_gauss(order, -1.0, 1.0, cb, 1e-12);
  const int n_az = n_azimuth > 0 ? n_azimuth : 2 * order;
  double acc = 0.0;
  for (std::size_t i = 0; i < gr.x.size(); ++i) {
    const double r = gr.x[i];
    for (std::size_t k = 0; k < gc.x.size(); ++k) {
      const double c = gc.x[k], s = std::sqrt(std::max(0.0, 1.0 - c * c));
      for (int j = 0; j < n_az; ++j) {
        const double t = 2.0 * pi * (j + 0.5) / n_az;
        const Vec3 x = r * Vec3(s * std::cos(t), s * std::sin(t), c);
        acc += gr.w[i] * r * r * gc.w[k] * (2.0 * pi / n_az) * (a.value(x) - b.value(x)).squaredNorm();
      }
    }
  }
  return acc;
}

double mollifier_l2_error(const CoeffProfile& original, const MollifiedProfile& m, double R, double delta) {
  std::vector<double> br{delta, 2.0 * delta, 3.0 * delta, R - delta, R - 2.0 * delta};
  for (double r : original.breaks()) {
    br.push_back(r);
    br.push_back(r - delta);
    br.push_back(r + delta);
  }
  const bool axisym = m.axisymmetric && original.isotropic() && original.kind() != CoeffKind::RadialMatrix;
  return std::sqrt(l2_difference(original, m.profile, R, delta, br, 16, axisym ? 1 : 0));
}

std::vector<TracePoint> radial_trace(const CoeffProfile& original, const CoeffProfile& mollified, const Vec3& dir,
                                     double r_max, int n) {
  std::vector<TracePoint> out;
  const Vec3 d = dir.normalized();
  for (int i = 0; i < n; ++i) {
    const double r = r_max * i / std::max(1, n - 1);
    out.push_back({r, min_eigenvalue_sym(original.value(r * d)), min_eigenvalue_sym(mollified.value(r * d))});
  }
  return out;
}

}  // namespace maxstab
