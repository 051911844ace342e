// SPDX-License-Identifier: Apache-2.0
#include "maxstab/manufactured.hpp"

#include <cmath>
#include <stdexcept>

namespace maxstab {

void VectorFieldDef::eval(const Vec3& x, CVec3& v, CMat3& jac) const {
  const CVec3 xc = x.cast<cd>();
  v = constant + linear * xc;
  jac = linear;
  for (const auto& a : atoms) {
    const CVec3 gpsi = a.b + 2.0 * a.Q * xc;
    const cd phi = std::exp(a.c0 + bdot(a.b, x) + bdot(xc, CVec3(a.Q * xc)));
    const CVec3 gphi = phi * gpsi;
    const CMat3 hphi = phi * (gpsi * gpsi.transpose() + 2.0 * a.Q);
    v += ccross(gphi, a.curl_dir) + a.grad_coef * gphi;
    for (int l = 0; l < 3; ++l) {
      const CVec3 col = hphi.col(l);
      jac.col(l) += ccross(col, a.curl_dir) + a.grad_coef * col;
    }
  }
}

void MatrixCoeffDef::eval(const Vec3& x, Mat3& value, Mat3& dir, Vec3& rowdiv) const {
  const double r2 = x.squaredNorm();
  const double s = 1.0 + s2 * r2;
  const double t = t_amp * std::exp(-t_rate * r2);
  value = scale * (s * Mat3::Identity() + t * M0);
  // ∇s = 2 s2 x and ∇t = -2 t_rate t x.
  dir = scale * (2.0 * s2 * r2 * Mat3::Identity() - 2.0 * t_rate * t * r2 * M0);
  rowdiv = scale * (2.0 * s2 * x - 2.0 * t_rate * t * (M0.transpose() * x));
}

FieldSample manufactured_sample(const ManufacturedDef& def, const Vec3& x) {
  FieldSample s;
  s.x = x;
  s.omega = def.omega;
  def.E.eval(x, s.E, s.jacE);
  def.H.eval(x, s.H, s.jacH);
  auto curl = [](const CMat3& J) { return CVec3(J(2, 1) - J(1, 2), J(0, 2) - J(2, 0), J(1, 0) - J(0, 1)); };
  s.curlE = curl(s.jacE);
  s.curlH = curl(s.jacH);
  def.eps.eval(x, s.eps, s.depsDir, s.divEpsMat);
  def.mu.eval(x, s.mu, s.dmuDir, s.divMuMat);
  s.divEpsE = bdot(s.E, s.divEpsMat) + (s.eps.cast<cd>() * s.jacE).trace();
  s.divMuH = bdot(s.H, s.divMuMat) + (s.mu.cast<cd>() * s.jacH).trace();
  s.beta = def.beta.b0 + def.beta.b1.dot(x) + def.beta.b2 * x.squaredNorm();
  s.gradBeta = def.beta.b1 + 2.0 * def.beta.b2 * x;
  return s;
}

ManufacturedField make_manufactured(const ManufacturedDef& def) {
  return ManufacturedField{def.id, [def](const Vec3& x) { return manufactured_sample(def, x); }};
}

namespace {

ExpQuadAtom wave_atom(double k, const Vec3& dir, double width, const Vec3& center, const CVec3& curl_dir,
                      cd grad_coef, cd amp) {
  // exp(ik d·x - |x - c|²/(2w²)) up to the constant factor amp.
  ExpQuadAtom a;
  const double q = 1.0 / (2.0 * width * width);
  a.Q = -q * CMat3::Identity();
  a.b = I * k * dir.normalized().cast<cd>() + (2.0 * q) * center.cast<cd>();
  a.c0 = std::log(amp) - q * center.squaredNorm();
  a.curl_dir = curl_dir;
  a.grad_coef = grad_coef;
  return a;
}

Mat3 psd_from(const Vec3& u, const Vec3& v) { return u * u.transpose() + 0.5 * v * v.transpose(); }

}  // namespace

ManufacturedDef manufactured_trio(int index, double k) {
  ManufacturedDef s;
  switch (index) {
    case 0:
      s.id = "trio-0";
      s.omega = 1.3;
      s.E.atoms = {wave_atom(k, Vec3(1, 0.2, 0.1), 0.6, Vec3(0.1, 0, 0), CVec3(0, 0, 1), 0.0, 1.0),
                   wave_atom(k, Vec3(-0.3, 1, 0.4), 0.5, Vec3(0, -0.15, 0.1), CVec3(1, 0, 0), 0.3, cd(0.8, 0.2))};
      s.H.atoms = {wave_atom(k, Vec3(0.2, -0.5, 1), 0.55, Vec3(0, 0.1, -0.1), CVec3(0, 1, 0), 0.0, cd(0.6, -0.4)),
                   wave_atom(k, Vec3(1, 1, -0.2), 0.7, Vec3(-0.1, 0, 0), CVec3(0.5, 0, 1), cd(0, 0.2), 0.9)};
      s.eps = {1.0, 0.25, 0.5, 1.0, psd_from(Vec3(1, 0.3, 0), Vec3(0, 0.2, 1))};
      s.mu = {1.2, 0.1, 0.3, 2.0, psd_from(Vec3(0, 1, 0.5), Vec3(1, 0, 0))};
      s.beta = {0.7, Vec3(0.2, -0.1, 0.3), 0.4};
      break;
    case 1:
      s.id = "trio-1";
      s.omega = 2.1;
      s.E.constant = CVec3(0.2, cd(0, 0.1), -0.3);
      s.E.atoms = {wave_atom(k, Vec3(0.1, 0.9, -0.4), 0.5, Vec3(0.2, 0.1, 0), CVec3(1, 1, 0), 0.0, 1.1),
                   wave_atom(0.7 * k, Vec3(-1, 0.3, 0.6), 0.65, Vec3(0, 0, 0.2), CVec3(0, 0.3, 1), 0.5, cd(0.2, 0.7))};
      s.H.linear << 0.1, cd(0, 0.2), 0.0, 0.0, -0.1, 0.3, cd(0.1, 0.1), 0.0, 0.05;
      s.H.atoms = {wave_atom(k, Vec3(0.6, 0.1, 1), 0.45, Vec3(-0.2, 0, 0.1), CVec3(1, 0, 0.2), 0.0, cd(0.9, 0.1)),
                   wave_atom(1.2 * k, Vec3(0, -1, 0.3), 0.6, Vec3(0.1, 0.1, -0.2), CVec3(0, 0, 1), cd(0.1, -0.3), 0.7)};
      s.eps = {0.8, 0.25, 0.8, 1.5, psd_from(Vec3(0.2, 0.2, 1), Vec3(1, -1, 0))};
      s.mu = {1.0, 0.25, 0.4, 0.8, psd_from(Vec3(1, 0, 0), Vec3(0, 1, 1))};
      s.beta = {1.5, Vec3(0, 0.3, 0.1), 0.2};
      break;
    case 2:
      s.id = "trio-2";
      s.omega = 0.7;
      s.E.atoms = {wave_atom(k, Vec3(0, 0, 1), 0.6, Vec3(0, 0, 0), CVec3(1, 0, 0), 0.0, 1.0),
                   wave_atom(k, Vec3(0, 0, -1), 0.6, Vec3(0, 0, 0), CVec3(0, 1, 0), 0.0, cd(0, 1)),
                   wave_atom(0.5 * k, Vec3(1, -1, 0), 0.4, Vec3(0.2, -0.2, 0.2), CVec3(0, 0, 1), 0.4, 0.5)};
      s.H.atoms = {wave_atom(k, Vec3(1, 0, 0), 0.55, Vec3(0, 0.1, 0), CVec3(0, 1, 1), 0.0, cd(1, 1)),
                   wave_atom(0.8 * k, Vec3(-0.5, 0.5, 0.7), 0.5, Vec3(0.15, 0, -0.1), CVec3(1, 0, 0), cd(0.3, 0), 0.6)};
      s.eps = {1.0, 0.25, 0.7, 1.2, psd_from(Vec3(0, 1, 0), Vec3(0.5, 0, 0.5))};
      s.mu = {0.9, 0.3, 0.2, 3.0, psd_from(Vec3(0.3, 0.3, 0.3), Vec3(0, 1, -1))};
      s.beta = {0.3, Vec3(-0.2, 0.2, 0.0), 0.6};
      break;
    default:
      throw std::invalid_argument("manufactured_trio: index must be 0, 1 or 2");
  }
  return s;
}

double integrated_trio_wavenumber(int index) {
  static constexpr double k[] = {26.0, 18.0, 24.0};
  if (index < 0 || index > 2) throw std::invalid_argument("integrated_trio_wavenumber: index must be 0, 1 or 2");
  return k[index];
}

ManufacturedDef constant_field_def(double beta) {
  ManufacturedDef s;
  s.id = "constant";
  s.E.constant = CVec3(1, 0, 0);
  s.H.constant = CVec3(0, 1, 0);
  s.beta.b0 = beta;
  return s;
}

ManufacturedDef plane_wave_def(double eps0, double mu0, const Vec3& d_in, const Vec3& A_in, double omega) {
  const Vec3 d = d_in.normalized(), A = A_in.normalized();
  const double k = omega * std::sqrt(eps0 * mu0);
  if (!(k > 0.0)) throw std::invalid_argument("plane_wave_def: need omega > 0");
  ManufacturedDef s;
  s.id = "plane-wave";
  s.omega = omega;
  s.eps.scale = eps0;
  s.mu.scale = mu0;
  ExpQuadAtom ae;
  ae.b = I * k * d.cast<cd>();
  // ∇φ × c = ik φ d × c, and d × (A × d) = A.
  ae.curl_dir = (std::sqrt(mu0) / (I * k)) * A.cross(d).cast<cd>();
  ExpQuadAtom ah = ae;
  ah.curl_dir = (std::sqrt(eps0) / (I * k)) * A.cast<cd>();
  s.E.atoms = {ae};
  s.H.atoms = {ah};
  return s;
}

}  // namespace maxstab
