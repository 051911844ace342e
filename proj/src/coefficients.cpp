// SPDX-License-Identifier: Apache-2.0
#include "maxstab/coefficients.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

namespace maxstab {

double min_eigenvalue_sym(const Mat3& M) {
  Eigen::SelfAdjointEigenSolver<Mat3> es(0.5 * (M + M.transpose()), Eigen::EigenvaluesOnly);
  return es.eigenvalues()(0);
}

double max_eigenvalue_sym(const Mat3& M) {
  Eigen::SelfAdjointEigenSolver<Mat3> es(0.5 * (M + M.transpose()), Eigen::EigenvaluesOnly);
  return es.eigenvalues()(2);
}

namespace {

std::vector<Vec3> fibonacci_directions(int n) {
  std::vector<Vec3> out;
  out.reserve(n);
  const double golden = pi * (3.0 - std::sqrt(5.0));
  for (int i = 0; i < n; ++i) {
    const double z = 1.0 - 2.0 * (i + 0.5) / n;
    const double s = std::sqrt(1.0 - z * z);
    out.emplace_back(s * std::cos(golden * i), s * std::sin(golden * i), z);
  }
  return out;
}

}  // namespace

CoeffProfile CoeffProfile::constant(double background) {
  if (!(background > 0.0)) throw std::invalid_argument("coefficient background must be positive");
  CoeffProfile p;
  p.kind_ = CoeffKind::Constant;
  p.smoothness_ = Smoothness::W1infty;
  p.background_ = background;
  p.support_radius_ = 0.0;
  p.isotropic_ = true;
  return p;
}

CoeffProfile CoeffProfile::piecewise_radial(std::vector<double> radii, std::vector<double> values,
                                            double background) {
  if (!(background > 0.0)) throw std::invalid_argument("coefficient background must be positive");
  if (radii.empty() || radii.size() != values.size())
    throw std::invalid_argument("piecewise profile needs one value per shell radius");
  for (std::size_t j = 0; j < radii.size(); ++j) {
    if (!(radii[j] > (j == 0 ? 0.0 : radii[j - 1])))
      throw std::invalid_argument("shell radii must be positive and strictly increasing");
    if (!(values[j] > 0.0)) throw std::invalid_argument("shell values must be positive (SPD)");
  }
  CoeffProfile p;
  p.kind_ = CoeffKind::RadialScalar;
  p.smoothness_ = Smoothness::Linfty;
  p.background_ = background;
  p.support_radius_ = radii.back();
  p.isotropic_ = true;
  p.shell_radii_ = std::move(radii);
  p.shell_values_ = std::move(values);
  return p;
}

CoeffProfile CoeffProfile::smooth_radial(ScalarFn f, ScalarFn df, double support_radius,
                                         double background) {
  if (!(background > 0.0)) throw std::invalid_argument("coefficient background must be positive");
  if (!(support_radius > 0.0)) throw std::invalid_argument("support radius must be positive");
  CoeffProfile p;
  p.kind_ = CoeffKind::RadialScalar;
  p.smoothness_ = df ? Smoothness::W1infty : Smoothness::Linfty;
  p.background_ = background;
  p.support_radius_ = support_radius;
  p.isotropic_ = true;
  p.scalar_fn_ = std::move(f);
  p.scalar_deriv_fn_ = std::move(df);
  p.validate_samples();
  return p;
}

CoeffProfile CoeffProfile::radial_matrix(MatrixFn value, MatrixFn dir_derivative,
                                         double support_radius, double background, bool isotropic) {
  if (!(background > 0.0)) throw std::invalid_argument("coefficient background must be positive");
  if (!(support_radius > 0.0)) throw std::invalid_argument("support radius must be positive");
  CoeffProfile p;
  p.kind_ = CoeffKind::RadialMatrix;
  p.smoothness_ = dir_derivative ? Smoothness::W1infty : Smoothness::Linfty;
  p.background_ = background;
  p.support_radius_ = support_radius;
  p.isotropic_ = isotropic;
  p.value_fn_ = std::move(value);
  p.deriv_fn_ = std::move(dir_derivative);
  p.validate_samples();
  return p;
}

void CoeffProfile::validate_samples() const {
  const auto dirs = isotropic_ ? std::vector<Vec3>{Vec3(0, 0, 1)} : fibonacci_directions(64);
  const int nr = 129;
  for (int i = 0; i < nr; ++i) {
    const double r = support_radius_ * i / (nr - 1);
    for (const auto& d : dirs) {
      const Mat3 M = value(r * d);
      if ((M - M.transpose()).norm() > 1e-12 * (1.0 + M.norm()))
        throw std::invalid_argument("coefficient value is not symmetric");
      if (!(min_eigenvalue_sym(M) > 0.0))
        throw std::invalid_argument("coefficient value is not positive definite");
    }
  }
}

double CoeffProfile::scalar(double r) const {
  if (kind_ == CoeffKind::Constant || r > support_radius_) return background_;
  if (!shell_values_.empty()) {
    auto it = std::lower_bound(shell_radii_.begin(), shell_radii_.end(), r);
    return shell_values_[static_cast<std::size_t>(it - shell_radii_.begin())];
  }
  if (scalar_fn_) return scalar_fn_(r);
  return value_fn_(Vec3(0, 0, r))(0, 0);
}

double CoeffProfile::scalar_dir_derivative(double r) const {
  if (!has_derivative()) throw std::logic_error("profile has no derivative access");
  if (kind_ == CoeffKind::Constant || r > support_radius_) return 0.0;
  if (scalar_deriv_fn_) return r * scalar_deriv_fn_(r);
  return deriv_fn_(Vec3(0, 0, r))(0, 0);
}

Mat3 CoeffProfile::value(const Vec3& x) const {
  const double r = x.norm();
  if (kind_ == CoeffKind::Constant || r > support_radius_) return background_ * Mat3::Identity();
  if (kind_ == CoeffKind::RadialScalar) return scalar(r) * Mat3::Identity();
  return value_fn_(x);
}

Mat3 CoeffProfile::dir_derivative(const Vec3& x) const {
  if (!has_derivative()) throw std::logic_error("profile has no derivative access");
  const double r = x.norm();
  if (kind_ == CoeffKind::Constant || r > support_radius_) return Mat3::Zero();
  if (kind_ == CoeffKind::RadialScalar) return r * scalar_deriv_fn_(r) * Mat3::Identity();
  return deriv_fn_(x);
}

CoeffProfile example1_profile(double inner, double r1, double background) {
  return CoeffProfile::piecewise_radial({r1}, {inner}, background);
}

std::vector<double> example3_radii(double r_outer) {
  std::vector<double> radii;
  for (int j = 1;; ++j) {
    const double thickness = r_outer / (static_cast<double>(j) * (j + 1));
    if (thickness < 1e-4 * r_outer) break;
    radii.push_back(r_outer * j / (j + 1.0));
  }
  radii.back() = r_outer;
  return radii;
}

CoeffProfile example3_profile(double background, double r_outer) {
  auto radii = example3_radii(r_outer);
  std::vector<double> values;
  for (std::size_t j = 1; j <= radii.size(); ++j)
    values.push_back(background * (1.0 - std::ldexp(1.0, -static_cast<int>(j))));
  return CoeffProfile::piecewise_radial(std::move(radii), std::move(values), background);
}

const std::vector<Vec3>& probe_directions() {
  static const std::vector<Vec3> dirs = [] {
    std::vector<Vec3> d{Vec3::UnitX(), Vec3::UnitY(), Vec3::UnitZ()};
    const double t = (1.0 + std::sqrt(5.0)) / 2.0;
    // One representative per antipodal pair of icosahedron vertices.
    const Vec3 verts[6] = {{0, 1, t}, {0, -1, t}, {1, t, 0}, {-1, t, 0}, {t, 0, 1}, {-t, 0, 1}};
    for (const auto& v : verts) d.push_back(v.normalized());
    // Face centres: one per antipodal pair of the 20 faces.
    std::vector<Vec3> all;
    for (const auto& v : verts) {
      all.push_back(v);
      all.push_back(-v);
    }
    const double edge2 = 4.0;
    std::vector<Vec3> faces;
    for (std::size_t a = 0; a < all.size(); ++a)
      for (std::size_t b = a + 1; b < all.size(); ++b)
        for (std::size_t c = b + 1; c < all.size(); ++c) {
          if (std::abs((all[a] - all[b]).squaredNorm() - edge2) > 1e-9) continue;
          if (std::abs((all[a] - all[c]).squaredNorm() - edge2) > 1e-9) continue;
          if (std::abs((all[b] - all[c]).squaredNorm() - edge2) > 1e-9) continue;
          const Vec3 f = (all[a] + all[b] + all[c]).normalized();
          bool dup = false;
          for (const auto& g : faces) dup = dup || std::abs(std::abs(f.dot(g)) - 1.0) < 1e-9;
          if (!dup) faces.push_back(f);
        }
    for (const auto& f : faces) d.push_back(f);
    return d;
  }();
  return dirs;
}

std::vector<double> default_radial_grid(const CoeffProfile& p, int n) {
  const double Rs = p.support_radius() > 0.0 ? p.support_radius() : 1.0;
  std::vector<double> g;
  for (int i = 0; i <= n; ++i) g.push_back(1.05 * Rs * i / n);
  g.push_back(Rs);
  for (double b : p.breaks()) {
    g.push_back(b);
    g.push_back(b * (1.0 + 1e-9));
  }
  std::sort(g.begin(), g.end());
  g.erase(std::unique(g.begin(), g.end()), g.end());
  return g;
}

GammaEstimate gamma_lower_bound(const CoeffProfile& p, const std::vector<double>& radial_grid,
                                const std::vector<Vec3>& direction_grid) {
  if (!p.has_derivative()) throw std::invalid_argument("gamma_lower_bound needs a W1infty profile");
  GammaEstimate best;
  best.value = std::numeric_limits<double>::infinity();
  const std::vector<Vec3> single{Vec3::UnitZ()};
  const auto& dirs = p.isotropic() ? single : direction_grid;
  for (double r : radial_grid) {
    for (const auto& d : dirs) {
      const Vec3 x = r * d.normalized();
      const Mat3 e = p.value(x);
      const Mat3 M = Mat3::Identity() + p.dir_derivative(x) * e.inverse();
      const double lam = min_eigenvalue_sym(M);
      if (lam < best.value) {
        best.value = lam;
        best.argmin = x;
      }
    }
  }
  best.condition_holds = best.value > 0.0;
  return best;
}

GammaEstimate gamma_lower_bound(const CoeffProfile& p) {
  return gamma_lower_bound(p, default_radial_grid(p), probe_directions());
}

MonotonicityResult check_radial_monotonicity(const CoeffProfile& p, const std::vector<Vec3>& ray_samples,
                                             const std::vector<double>& dilation_factors, double tol) {
  MonotonicityResult res;
  const auto& probes = probe_directions();
  for (const auto& x : ray_samples) {
    const Mat3 a = p.value(x);
    for (double h : dilation_factors) {
      const Mat3 b = p.value((1.0 + h) * x);
      const Mat3 diff = b - a;
      for (const auto& v : probes) {
        ++res.checks;
        const double q = v.dot(diff * v);
        if (q < -tol) {
          res.pass = false;
          res.witness = MonotonicityWitness{x, h, v, -q};
          return res;
        }
      }
      Eigen::SelfAdjointEigenSolver<Mat3> es(0.5 * (diff + diff.transpose()));
      ++res.checks;
      if (es.eigenvalues()(0) < -tol) {
        res.pass = false;
        res.witness = MonotonicityWitness{x, h, es.eigenvectors().col(0), -es.eigenvalues()(0)};
        return res;
      }
    }
  }
  return res;
}

std::vector<Vec3> default_ray_samples(const CoeffProfile& p, int count, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> nd;
  const double Rs = p.support_radius() > 0.0 ? p.support_radius() : 1.0;
  std::uniform_real_distribution<double> ur(0.0, 1.1 * Rs);
  std::vector<Vec3> out;
  out.reserve(count);
  for (int i = 0; i < count; ++i) {
    Vec3 d(nd(rng), nd(rng), nd(rng));
    out.push_back(ur(rng) * d.normalized());
  }
  return out;
}

std::vector<double> default_dilations() { return {1e-4, 1e-3, 1e-2, 0.05, 0.1, 0.25, 0.5, 1.0}; }

MonotonicityResult check_radial_monotonicity(const CoeffProfile& p) {
  return check_radial_monotonicity(p, default_ray_samples(p, 400, 12345u), default_dilations());
}

namespace {

struct Extrema {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
};

Extrema extrema(const CoeffProfile& p) {
  Extrema e;
  e.lo = e.hi = p.background();
  if (p.kind() == CoeffKind::Constant) return e;
  if (!p.shell_values().empty()) {
    for (double v : p.shell_values()) {
      e.lo = std::min(e.lo, v);
      e.hi = std::max(e.hi, v);
    }
    return e;
  }
  const auto grid = default_radial_grid(p, 2000);
  const auto dirs = p.isotropic() ? std::vector<Vec3>{Vec3::UnitZ()} : fibonacci_directions(200);
  for (double r : grid)
    for (const auto& d : dirs) {
      Eigen::SelfAdjointEigenSolver<Mat3> es(p.value(r * d), Eigen::EigenvaluesOnly);
      e.lo = std::min(e.lo, es.eigenvalues()(0));
      e.hi = std::max(e.hi, es.eigenvalues()(2));
    }
  return e;
}

double star_value(const CoeffProfile& p) {
  const auto grid = default_radial_grid(p, 2000);
  const auto dirs = p.isotropic() ? std::vector<Vec3>{Vec3::UnitZ()} : fibonacci_directions(200);
  double best = std::numeric_limits<double>::infinity();
  for (double r : grid)
    for (const auto& d : dirs) {
      const Vec3 x = r * d;
      best = std::min(best, min_eigenvalue_sym(p.value(x) + p.dir_derivative(x)));
    }
  return best;
}

}  // namespace

CoeffSummary summarize(const CoeffProfile& eps, const CoeffProfile& mu) {
  CoeffSummary s;
  s.eps0 = eps.background();
  s.mu0 = mu.background();
  const auto ee = extrema(eps);
  const auto em = extrema(mu);
  s.eps_min = ee.lo;
  s.eps_max = ee.hi;
  s.mu_min = em.lo;
  s.mu_max = em.hi;
  s.eps_monotone = check_radial_monotonicity(eps).pass;
  s.mu_monotone = check_radial_monotonicity(mu).pass;

  auto gamma_of = [&](const CoeffProfile& p, bool monotone, double& out) {
    if (p.has_derivative()) {
      const auto g = gamma_lower_bound(p);
      out = std::min(1.0, g.value);
      return g.condition_holds;
    }
    // Linfty coefficients: the bound for radially non-decreasing media uses γ = 1.
    out = 1.0;
    return monotone;
  };
  const bool ge = gamma_of(eps, s.eps_monotone, s.gamma_eps);
  const bool gm = gamma_of(mu, s.mu_monotone, s.gamma_mu);
  s.gamma_valid = ge && gm;
  if (!s.gamma_valid) s.notes += "gamma condition violated;";

  if (eps.has_derivative()) {
    s.eps_star = star_value(eps);
    s.eps_star_valid = s.eps_star > 0.0;
  } else {
    s.eps_star = std::numeric_limits<double>::quiet_NaN();
    s.eps_star_valid = false;
  }
  if (mu.has_derivative()) {
    s.mu_star = star_value(mu);
    s.mu_star_valid = s.mu_star > 0.0;
  } else {
    s.mu_star = std::numeric_limits<double>::quiet_NaN();
    s.mu_star_valid = false;
  }
  if (!s.eps_monotone || !s.mu_monotone) s.notes += "non-monotone medium;";
  return s;
}

}  // namespace maxstab
