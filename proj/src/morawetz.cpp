// SPDX-License-Identifier: Apache-2.0
#include "maxstab/morawetz.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace maxstab {

namespace {

CVec3 conjv(const CVec3& v) { return v.conjugate(); }
CVec3 cplx(const Vec3& v) { return v.cast<cd>(); }
CVec3 mat_apply(const Mat3& M, const CVec3& v) { return M.cast<cd>() * v; }

double spectral_norm_spd(const Mat3& M) { return max_eigenvalue_sym(M); }

}  // namespace

double divergence_consistency(const FieldSample& s) {
  const cd de = bdot(s.E, s.divEpsMat) + (s.eps.cast<cd>() * s.jacE).trace();
  const cd dm = bdot(s.H, s.divMuMat) + (s.mu.cast<cd>() * s.jacH).trace();
  return std::max(std::abs(de - s.divEpsE), std::abs(dm - s.divMuH));
}

Vec3 q_beta(const FieldSample& s) {
  const CVec3 Eb = conjv(s.E), Hb = conjv(s.H);
  const Vec3 x = s.x;
  const CVec3 t = bdot(s.E, x) * mat_apply(s.eps, Eb) + bdot(s.H, x) * mat_apply(s.mu, Hb) + s.beta * ccross(s.E, Hb);
  const double eE = quad_form(s.eps, s.E), mH = quad_form(s.mu, s.H);
  return 2.0 * t.real() - (eE + mH) * x;
}

double identity_lhs(const FieldSample& s) {
  const CVec3 Eb = conjv(s.E), Hb = conjv(s.H);
  const CVec3 x = cplx(s.x);
  const CVec3 re = s.curlE - I * s.omega * mat_apply(s.mu, s.H);
  const CVec3 rh = s.curlH + I * s.omega * mat_apply(s.eps, s.E);
  const CVec3 me = ccross(mat_apply(s.eps, Eb), x) + s.beta * Hb;
  const CVec3 mh = ccross(mat_apply(s.mu, Hb), x) - s.beta * Eb;
  return 2.0 * (bdot(re, me) + bdot(rh, mh)).real();
}

double rellich_lhs(const FieldSample& s) {
  const CVec3 Eb = conjv(s.E), Hb = conjv(s.H);
  const CVec3 x = cplx(s.x);
  const CVec3 re = s.curlE - I * s.omega * mat_apply(s.mu, s.H);
  const CVec3 rh = s.curlH + I * s.omega * mat_apply(s.eps, s.E);
  return 2.0 * (bdot(re, ccross(mat_apply(s.eps, Eb), x)) + bdot(rh, ccross(mat_apply(s.mu, Hb), x))).real();
}

double beta_lhs(const FieldSample& s) {
  const CVec3 re = s.curlE - I * s.omega * mat_apply(s.mu, s.H);
  const CVec3 rh = s.curlH + I * s.omega * mat_apply(s.eps, s.E);
  return 2.0 * s.beta * (bdot(re, conjv(s.H)) - bdot(rh, conjv(s.E))).real();
}

double rellich_nondiv(const FieldSample& s) {
  const cd t = bdot(s.E, s.x) * std::conj(s.divEpsE) + bdot(s.H, s.x) * std::conj(s.divMuH);
  return -2.0 * t.real() + quad_form(s.eps + s.depsDir, s.E) + quad_form(s.mu + s.dmuDir, s.H);
}

double beta_nondiv(const FieldSample& s) {
  return -2.0 * bdot(ccross(s.E, conjv(s.H)), s.gradBeta).real();
}

double identity_nondiv(const FieldSample& s) {
  const cd t = bdot(s.E, s.x) * std::conj(s.divEpsE) + bdot(s.H, s.x) * std::conj(s.divMuH) +
               bdot(ccross(s.E, conjv(s.H)), s.gradBeta);
  return -2.0 * t.real() + quad_form(s.eps + s.depsDir, s.E) + quad_form(s.mu + s.dmuDir, s.H);
}

double divergence_fd(const std::function<Vec3(const Vec3&)>& F, const Vec3& x, double h) {
  double div = 0.0;
  for (int i = 0; i < 3; ++i) {
    Vec3 e = Vec3::Zero();
    e(i) = h;
    const double fp2 = F(x + 2.0 * e)(i), fp1 = F(x + e)(i), fm1 = F(x - e)(i), fm2 = F(x - 2.0 * e)(i);
    div += (-fp2 + 8.0 * fp1 - 8.0 * fm1 + fm2) / (12.0 * h);
  }
  return div;
}

CVec3 curl_fd(const std::function<CVec3(const Vec3&)>& F, const Vec3& x, double h) {
  CMat3 J;  // J(i, j) = ∂_j F_i
  for (int j = 0; j < 3; ++j) {
    Vec3 e = Vec3::Zero();
    e(j) = h;
    J.col(j) = (-F(x + 2.0 * e) + 8.0 * F(x + e) - 8.0 * F(x - e) + F(x - 2.0 * e)) / (12.0 * h);
  }
  return CVec3(J(2, 1) - J(1, 2), J(0, 2) - J(2, 0), J(1, 0) - J(0, 1));
}

PointwiseResidual pointwise_identity_residual(const ManufacturedField& mf, const Vec3& x, double h) {
  const FieldSample s = mf.sample(x);
  PointwiseResidual r;
  r.lhs = identity_lhs(s);
  r.rhs_nondiv = identity_nondiv(s);
  r.divQ_fd = divergence_fd([&](const Vec3& y) { return q_beta(mf.sample(y)); }, x, h);
  const double rhs = r.divQ_fd + r.rhs_nondiv;
  r.abs_residual = std::abs(r.lhs - rhs);
  r.residual = r.abs_residual / (std::abs(r.lhs) + std::abs(rhs) + 1.0);
  return r;
}

PointwiseResidual rellich_identity_residual(const ManufacturedField& mf, const Vec3& x, double h) {
  const FieldSample s = mf.sample(x);
  PointwiseResidual r;
  r.lhs = 2.0 * bdot(s.curlE, ccross(mat_apply(s.eps, conjv(s.E)), cplx(s.x))).real();
  r.rhs_nondiv = -2.0 * (bdot(s.E, s.x) * std::conj(s.divEpsE)).real() + quad_form(s.eps + s.depsDir, s.E);
  r.divQ_fd = divergence_fd(
      [&](const Vec3& y) {
        const FieldSample t = mf.sample(y);
        const CVec3 v = bdot(t.E, y) * mat_apply(t.eps, conjv(t.E));
        return Vec3(2.0 * v.real() - quad_form(t.eps, t.E) * y);
      },
      x, h);
  const double rhs = r.divQ_fd + r.rhs_nondiv;
  r.abs_residual = std::abs(r.lhs - rhs);
  r.residual = r.abs_residual / (std::abs(r.lhs) + std::abs(rhs) + 1.0);
  return r;
}

namespace {

FieldSample vacuum_sample(const ManufacturedField& mf, const Vec3& y, double eps0, double mu0) {
  FieldSample t = mf.sample(y);
  t.eps = eps0 * Mat3::Identity();
  t.mu = mu0 * Mat3::Identity();
  t.depsDir.setZero();
  t.dmuDir.setZero();
  t.divEpsMat.setZero();
  t.divMuMat.setZero();
  t.divEpsE = eps0 * t.jacE.trace();
  t.divMuH = mu0 * t.jacH.trace();
  const double c = std::sqrt(eps0 * mu0);
  const double r = y.norm();
  t.beta = r * c;
  t.gradBeta = r > 0.0 ? Vec3(c * y / r) : Vec3::Zero();
  return t;
}

}  // namespace

SecondIdentityResult second_identity_residual(const ManufacturedField& mf, const Vec3& x, double eps0, double mu0,
                                              double h) {
  const FieldSample s = vacuum_sample(mf, x, eps0, mu0);
  SecondIdentityResult res;
  res.lhs = identity_lhs(s);
  const double divQ = divergence_fd([&](const Vec3& y) { return q_beta(vacuum_sample(mf, y, eps0, mu0)); }, x, h);
  const Vec3 xh = x.normalized();
  const CVec3 xc = cplx(xh);
  const double c = std::sqrt(eps0 * mu0);
  res.remainder_H = (mu0 * ccross(s.H, xc) - c * s.E).squaredNorm() / (2.0 * mu0);
  res.remainder_E = (eps0 * ccross(xc, s.E) - c * s.H).squaredNorm() / (2.0 * eps0);
  const cd div_terms = bdot(s.E, x) * eps0 * std::conj(s.jacE.trace()) + bdot(s.H, x) * mu0 * std::conj(s.jacH.trace());
  res.rhs = divQ - 2.0 * div_terms.real() + 0.5 * eps0 * (s.E.squaredNorm() - ccross(s.E, xc).squaredNorm()) +
            0.5 * mu0 * (s.H.squaredNorm() - ccross(s.H, xc).squaredNorm()) + res.remainder_H + res.remainder_E;
  res.residual = std::abs(res.lhs - res.rhs) / (std::abs(res.lhs) + std::abs(res.rhs) + 1.0);
  return res;
}

double normal_tangent_check(const CVec3& v, const Mat3& alpha, const Vec3& n, const Vec3& x) {
  const CVec3 vb = conjv(v);
  const double xn = x.dot(n);
  const double lhs = 2.0 * (bdot(v, x) * bdot(mat_apply(alpha, vb), n)).real() - quad_form(alpha, v) * xn;
  const CVec3 vN = bdot(v, n) * cplx(n);
  const CVec3 vT = v - vN;
  const Vec3 xT = x - xn * n;
  const double rhs = (quad_form(alpha, vN) - quad_form(alpha, vT)) * xn +
                     2.0 * (bdot(vT, xT) * bdot(mat_apply(alpha, vb), n)).real();
  return std::abs(lhs - rhs) / (std::abs(lhs) + std::abs(rhs) + 1.0);
}

namespace {

// Boundary integrand of the integrated identity at a point with outward normal n.
double surface_integrand(const FieldSample& s, const Vec3& n) {
  const double xn = s.x.dot(n);
  const Vec3 xT = s.x - xn * n;
  auto split = [&](const CVec3& v, CVec3& vN, CVec3& vT) {
    vN = bdot(v, n) * cplx(n);
    vT = v - vN;
  };
  CVec3 EN, ET, HN, HT;
  split(s.E, EN, ET);
  split(s.H, HN, HT);
  const double normal_part =
      (quad_form(s.eps, EN) - quad_form(s.eps, ET) + quad_form(s.mu, HN) - quad_form(s.mu, HT)) * xn;
  const cd cross_part = bdot(ET, xT) * bdot(mat_apply(s.eps, conjv(s.E)), n) +
                        bdot(HT, xT) * bdot(mat_apply(s.mu, conjv(s.H)), n) +
                        s.beta * bdot(ET, ccross(conjv(HT), cplx(n)));
  return normal_part + 2.0 * cross_part.real();
}

}  // namespace

IntegratedResidual integrated_identity_residual(const ManufacturedField& mf, double R, const BallRule& rule,
                                                const SphereRule& srule) {
  IntegratedResidual res;
  if (std::abs(srule.R - R) > 1e-12 * R || std::abs(rule.R_outer - R) > 1e-12 * R)
    throw std::invalid_argument("integrated identity: rules must match the ball radius");
  rule.for_each_node([&](const Vec3& x, double w) {
    const FieldSample s = mf.sample(x);
    res.volume += w * (identity_lhs(s) - identity_nondiv(s));
  });
  srule.for_each_node([&](const Vec3& x, double w) {
    const FieldSample s = mf.sample(x);
    res.surface += w * surface_integrand(s, x / R);
  });
  res.residual = std::abs(res.volume - res.surface) / (std::abs(res.volume) + std::abs(res.surface) + 1.0);
  return res;
}

double impedance_beta_threshold(const ImpedanceSample& s, double R_Omega, double rho) {
  return R_Omega * (3.0 + 1.0 / rho) * std::max(spectral_norm_spd(s.eps) / s.theta, s.theta * spectral_norm_spd(s.mu));
}

ImpedanceResult impedance_boundary_functional(const std::vector<ImpedanceSample>& samples, double R_Omega,
                                              double rho) {
  ImpedanceResult res;
  for (const auto& s : samples) {
    const Vec3& n = s.n;
    const double xn = s.x.dot(n);
    const Vec3 xT = s.x - xn * n;
    const CVec3 EN = bdot(s.E, n) * cplx(n), ET = s.E - EN;
    const CVec3 HN = bdot(s.H, n) * cplx(n), HT = s.H - HN;
    const double a = xn * (quad_form(s.eps, ET) - quad_form(s.eps, EN) + quad_form(s.mu, HT) - quad_form(s.mu, HN));
    const cd b = bdot(ET, xT) * bdot(mat_apply(s.eps, conjv(s.E)), n) +
                 bdot(HT, xT) * bdot(mat_apply(s.mu, conjv(s.H)), n) +
                 s.beta * bdot(ccross(s.E, conjv(s.H)), n);
    res.functional += s.weight * (a - 2.0 * b.real());
    res.rhs += s.weight * ((s.beta / s.theta) * s.g.squaredNorm() - R_Omega * spectral_norm_spd(s.eps) * ET.squaredNorm() -
                           R_Omega * spectral_norm_spd(s.mu) * HT.squaredNorm());
    if (s.beta < impedance_beta_threshold(s, R_Omega, rho) * (1.0 - 1e-12)) res.beta_ok = false;
  }
  res.holds = res.functional <= res.rhs + 1e-12 * (std::abs(res.functional) + std::abs(res.rhs) + 1.0);
  return res;
}

std::vector<ImpedanceSample> random_impedance_traces(const SphereRule& srule, double theta, double beta,
                                                     const Mat3& eps, const Mat3& mu, double g_scale,
                                                     unsigned seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> nd;
  auto rc = [&] { return CVec3(cd(nd(rng), nd(rng)), cd(nd(rng), nd(rng)), cd(nd(rng), nd(rng))); };
  std::vector<ImpedanceSample> out;
  out.reserve(srule.size());
  srule.for_each_node([&](const Vec3& x, double w) {
    ImpedanceSample s;
    s.x = x;
    s.n = x.normalized();
    s.weight = w;
    s.eps = eps;
    s.mu = mu;
    s.beta = beta;
    s.theta = theta;
    const CVec3 nc = s.n.cast<cd>();
    s.E = rc();
    const CVec3 ET = s.E - bdot(s.E, s.n) * nc;
    const CVec3 graw = rc();
    s.g = g_scale * (graw - bdot(graw, s.n) * nc);
    s.H = ccross(nc, theta * ET + s.g) + cd(nd(rng), nd(rng)) * nc;
    out.push_back(s);
  });
  return out;
}

double m_theta(double rho, double sup_value) { return (3.0 + 1.0 / rho) * sup_value; }

double m_theta(const std::vector<ImpedanceSample>& samples, double rho) {
  double sup = 0.0;
  for (const auto& s : samples)
    sup = std::max(sup, std::max(spectral_norm_spd(s.eps) / s.theta, s.theta * spectral_norm_spd(s.mu)));
  return m_theta(rho, sup);
}

}  // namespace maxstab
