// SPDX-License-Identifier: Apache-2.0
#include "maxstab/mie.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "maxstab/morawetz.hpp"
#include "maxstab/special_functions.hpp"

namespace maxstab {

void LayeredMedium::validate() const {
  if (radii.size() != eps.size() || radii.size() != mu.size())
    throw std::invalid_argument("layered medium: radii, eps and mu must have equal length");
  if (!(eps0 > 0.0) || !(mu0 > 0.0)) throw std::invalid_argument("layered medium: eps0 and mu0 must be positive");
  for (std::size_t j = 0; j < radii.size(); ++j) {
    if (!(radii[j] > (j == 0 ? 0.0 : radii[j - 1])))
      throw std::invalid_argument("layered medium: radii must be positive and strictly increasing");
    if (!(eps[j] > 0.0) || !(mu[j] > 0.0))
      throw std::invalid_argument("layered medium: shell parameters must be positive");
  }
}

CoeffProfile LayeredMedium::eps_profile() const {
  if (radii.empty()) return CoeffProfile::constant(eps0);
  return CoeffProfile::piecewise_radial(radii, eps, eps0);
}

CoeffProfile LayeredMedium::mu_profile() const {
  if (radii.empty()) return CoeffProfile::constant(mu0);
  return CoeffProfile::piecewise_radial(radii, mu, mu0);
}

LayeredMedium LayeredMedium::simplified() const {
  validate();
  LayeredMedium out;
  out.eps0 = eps0;
  out.mu0 = mu0;
  out.truncation_hint = truncation_hint;
  for (std::size_t j = 0; j < radii.size(); ++j) {
    if (!out.radii.empty() && out.eps.back() == eps[j] && out.mu.back() == mu[j]) {
      out.radii.back() = radii[j];
    } else {
      out.radii.push_back(radii[j]);
      out.eps.push_back(eps[j]);
      out.mu.push_back(mu[j]);
    }
  }
  while (!out.radii.empty() && out.eps.back() == eps0 && out.mu.back() == mu0) {
    out.radii.pop_back();
    out.eps.pop_back();
    out.mu.pop_back();
  }
  return out;
}

LayeredMedium example1_medium(double eps_in, double mu_in, double r1, double eps0, double mu0) {
  LayeredMedium m;
  m.radii = {r1};
  m.eps = {eps_in};
  m.mu = {mu_in};
  m.eps0 = eps0;
  m.mu0 = mu0;
  m.validate();
  return m;
}

LayeredMedium example3_medium(double eps0, double mu0, bool layered_mu, double r_outer) {
  LayeredMedium m;
  m.radii = example3_radii(r_outer);
  m.eps0 = eps0;
  m.mu0 = mu0;
  for (std::size_t j = 1; j <= m.radii.size(); ++j) {
    const double f = 1.0 - std::ldexp(1.0, -static_cast<int>(j));
    m.eps.push_back(eps0 * f);
    m.mu.push_back(layered_mu ? mu0 * f : mu0);
  }
  m.validate();
  return m;
}

void PlaneWaveIncidence::validate() const {
  if (std::abs(d.norm() - 1.0) > 1e-12 || std::abs(A.norm() - 1.0) > 1e-12)
    throw std::invalid_argument("plane wave: direction and polarization must be unit vectors");
  if (std::abs(A.dot(d)) > 1e-12) throw std::invalid_argument("plane wave: polarization must be orthogonal to direction");
  if (!(omega > 0.0)) throw std::invalid_argument("plane wave: omega must be positive");
}

std::vector<double> region_wavenumbers(const LayeredMedium& m, double omega) {
  std::vector<double> k;
  for (std::size_t j = 0; j < m.radii.size(); ++j) k.push_back(omega * std::sqrt(m.eps[j] * m.mu[j]));
  k.push_back(omega * std::sqrt(m.eps0 * m.mu0));
  return k;
}

std::vector<OrderCoefficients> solve_orders(const LayeredMedium& m, double omega, int order_max) {
  const std::size_t L = m.radii.size();
  const auto k = region_wavenumbers(m, omega);
  std::vector<double> mu(m.mu);
  mu.push_back(m.mu0);

  std::vector<OrderCoefficients> out(static_cast<std::size_t>(order_max) + 1);
  for (int n = 0; n <= order_max; ++n) {
    auto& oc = out[n];
    oc.n = n;
    oc.te_reg.assign(L + 1, cd(0.0));
    oc.te_out.assign(L + 1, cd(0.0));
    oc.tm_reg.assign(L + 1, cd(0.0));
    oc.tm_out.assign(L + 1, cd(0.0));
    oc.te_reg[0] = oc.tm_reg[0] = 1.0;
  }

  // Per-region ratio rho = out/reg and amplitude reg, propagated outward.
  std::vector<cd> te_rho(order_max + 1, 0.0), tm_rho(order_max + 1, 0.0);
  std::vector<cd> te_amp(order_max + 1, 1.0), tm_amp(order_max + 1, 1.0);
  for (std::size_t j = 0; j < L; ++j) {
    const double R = m.radii[j];
    const double k1 = k[j], k2 = k[j + 1], m1 = mu[j], m2 = mu[j + 1];
    const auto r1 = riccati_derivatives(bessel_table(order_max, k1 * R));
    const auto r2 = riccati_derivatives(bessel_table(order_max, k2 * R));
    for (int n = 1; n <= order_max; ++n) {
      const cd u1 = r1.psi[n] + te_rho[n] * r1.xi[n];
      const cd du1 = r1.dpsi[n] + te_rho[n] * r1.dxi[n];
      {
        const cd P = u1 / k1, Q = du1 / m1;
        const cd rho = (r2.dpsi[n] * P / m2 - r2.psi[n] * Q / k2) / (r2.xi[n] * Q / k2 - r2.dxi[n] * P / m2);
        const cd u2 = r2.psi[n] + rho * r2.xi[n];
        const cd du2 = r2.dpsi[n] + rho * r2.dxi[n];
        const cd s1 = u2 / k2, s2 = du2 / m2;
        te_amp[n] *= std::abs(s1) >= std::abs(s2) ? P / s1 : Q / s2;
        te_rho[n] = rho;
      }
      const cd v1 = r1.psi[n] + tm_rho[n] * r1.xi[n];
      const cd dv1 = r1.dpsi[n] + tm_rho[n] * r1.dxi[n];
      {
        const cd P = dv1 / k1, Q = v1 / m1;
        const cd rho = (r2.psi[n] * P / m2 - r2.dpsi[n] * Q / k2) / (r2.dxi[n] * Q / k2 - r2.xi[n] * P / m2);
        const cd v2 = r2.psi[n] + rho * r2.xi[n];
        const cd dv2 = r2.dpsi[n] + rho * r2.dxi[n];
        const cd s1 = dv2 / k2, s2 = v2 / m2;
        tm_amp[n] *= std::abs(s1) >= std::abs(s2) ? P / s1 : Q / s2;
        tm_rho[n] = rho;
      }
      out[n].te_reg[j + 1] = te_amp[n];
      out[n].te_out[j + 1] = te_amp[n] * te_rho[n];
      out[n].tm_reg[j + 1] = tm_amp[n];
      out[n].tm_out[j + 1] = tm_amp[n] * tm_rho[n];
    }
  }
  for (int n = 1; n <= order_max; ++n) {
    auto& oc = out[n];
    const cd ste = 1.0 / oc.te_reg[L], stm = 1.0 / oc.tm_reg[L];
    for (std::size_t j = 0; j <= L; ++j) {
      oc.te_reg[j] *= ste;
      oc.te_out[j] *= ste;
      oc.tm_reg[j] *= stm;
      oc.tm_out[j] *= stm;
    }
    oc.te_reg[L] = oc.tm_reg[L] = 1.0;
    oc.b = -oc.te_out[L];
    oc.a = -oc.tm_out[L];
  }
  return out;
}

std::vector<cd> MultipoleSolution::a_coeffs() const {
  std::vector<cd> v;
  for (const auto& o : orders) v.push_back(o.a);
  return v;
}

std::vector<cd> MultipoleSolution::b_coeffs() const {
  std::vector<cd> v;
  for (const auto& o : orders) v.push_back(o.b);
  return v;
}

int MultipoleSolution::region_of(double r) const {
  const auto& rad = medium.radii;
  auto it = std::lower_bound(rad.begin(), rad.end(), r);
  return static_cast<int>(it - rad.begin());
}

MultipoleSolution solve_layered(const LayeredMedium& medium_in, const PlaneWaveIncidence& inc, const MieOptions& opt) {
  inc.validate();
  medium_in.validate();
  MultipoleSolution sol;
  sol.medium = medium_in.simplified();
  sol.inc = inc;
  sol.e1 = inc.A;
  sol.e2 = inc.d.cross(inc.A);
  sol.e3 = inc.d;
  sol.k = region_wavenumbers(sol.medium, inc.omega);
  sol.mu = sol.medium.mu;
  sol.mu.push_back(sol.medium.mu0);

  const std::vector<double> kin = region_wavenumbers(medium_in, inc.omega);
  double x = kin.back() * medium_in.outer_radius();
  for (std::size_t j = 0; j < medium_in.radii.size(); ++j) x = std::max(x, kin[j] * medium_in.radii[j]);
  const int cap = std::min(opt.order_cap, kBesselOrderCap);
  int N = static_cast<int>(std::ceil(x + 4.0 * std::cbrt(x) + 2.0));
  N = std::max(N, std::max(1, medium_in.truncation_hint));
  N = std::min(N, cap);

  if (sol.medium.radii.empty()) {
    sol.N = N;
    sol.orders = solve_orders(sol.medium, inc.omega, N);
    sol.tail = 0.0;
    return sol;
  }

  for (;;) {
    auto orders = solve_orders(sol.medium, inc.omega, N);
    double peak = 0.0;
    for (int n = 1; n <= N; ++n) peak = std::max(peak, std::abs(orders[n].a) + std::abs(orders[n].b));
    const double last = std::abs(orders[N].a) + std::abs(orders[N].b);
    const double tail = peak > 0.0 ? last / peak : 0.0;
    double reg_tail = 0.0;
    if (x >= 1e-8) {
      const auto t = bessel_table(N, x);
      reg_tail = (2.0 * N + 1.0) * std::abs(t.j[N]);
    }
    const bool ok = tail <= opt.tail_tolerance && reg_tail <= opt.regular_tail_tolerance;
    if (ok || N >= cap) {
      if (!ok) {
        std::ostringstream os;
        os << "mie truncation cap " << cap << " reached with tail " << std::max(tail, reg_tail);
        throw MieTruncationError(os.str(), std::max(tail, reg_tail));
      }
      sol.N = N;
      sol.tail = tail;
      sol.orders = std::move(orders);
      return sol;
    }
    N = std::min(cap, N + std::max(2, N / 4));
  }
}

FieldPair incident_fields(const PlaneWaveIncidence& inc, double eps0, double mu0, const Vec3& x) {
  const double k = inc.omega * std::sqrt(eps0 * mu0);
  const cd ph = std::exp(I * (k * inc.d.dot(x)));
  FieldPair f;
  f.E = (std::sqrt(mu0) * ph) * inc.A.cast<cd>();
  f.H = (std::sqrt(eps0) * ph) * inc.d.cross(inc.A).cast<cd>();
  return f;
}

namespace {

// Spherical components with azimuthal structure in the incidence frame:
// E_r = cos(p) Er, E_th = cos(p) Eth, E_ph = sin(p) Eph,
// H_r = sin(p) Hr, H_th = sin(p) Hth, H_ph = cos(p) Hph.
struct Ring {
  cd Er = 0.0, Eth = 0.0, Eph = 0.0, Hr = 0.0, Hth = 0.0, Hph = 0.0;
  Ring& operator+=(const Ring& o) {
    Er += o.Er; Eth += o.Eth; Eph += o.Eph; Hr += o.Hr; Hth += o.Hth; Hph += o.Hph;
    return *this;
  }
};

Ring scaled(const Ring& a, cd s) {
  Ring r;
  r.Er = s * a.Er; r.Eth = s * a.Eth; r.Eph = s * a.Eph;
  r.Hr = s * a.Hr; r.Hth = s * a.Hth; r.Hph = s * a.Hph;
  return r;
}

// Radial profiles of the series part at one radius.
struct RadialData {
  int region = 0;
  bool exterior = false;
  double eta = 1.0;
  std::vector<cd> f, ft, fr, g, gt, gr;  // f, (1/ρ)(ρf)', f/ρ and the same for g
};

RadialData radial_data(const MultipoleSolution& sol, double r) {
  RadialData d;
  const int L = static_cast<int>(sol.medium.radii.size());
  d.region = sol.region_of(r);
  d.exterior = d.region == L;
  const double k = sol.k[d.region];
  const double m = sol.mu[d.region];
  d.eta = m * sol.inc.omega / k;
  const int N = sol.N;
  d.f.assign(N + 1, 0.0); d.ft.assign(N + 1, 0.0); d.fr.assign(N + 1, 0.0);
  d.g.assign(N + 1, 0.0); d.gt.assign(N + 1, 0.0); d.gr.assign(N + 1, 0.0);
  if (N < 1) return d;
  const double z = k * r;
  if (z < 1e-8) {
    // Only n = 1 regular waves survive at the origin: j_1/ρ -> 1/3, (ρ j_1)'/ρ -> 2/3.
    const auto& o = sol.orders[1];
    const cd te = d.exterior ? cd(0.0) : o.te_reg[d.region];
    const cd tm = d.exterior ? cd(0.0) : o.tm_reg[d.region];
    d.fr[1] = te / 3.0; d.ft[1] = 2.0 * te / 3.0; d.f[1] = te * z / 3.0;
    d.gr[1] = tm / 3.0; d.gt[1] = 2.0 * tm / 3.0; d.g[1] = tm * z / 3.0;
    return d;
  }
  const auto t = bessel_table(N, z);
  for (int n = 1; n <= N; ++n) {
    const auto& o = sol.orders[n];
    const cd te_r = d.exterior ? cd(0.0) : o.te_reg[d.region];
    const cd tm_r = d.exterior ? cd(0.0) : o.tm_reg[d.region];
    const cd te_o = o.te_out[d.region];
    const cd tm_o = o.tm_out[d.region];
    cd f = te_r * t.j[n], ft = te_r * (t.j[n] + z * t.dj[n]);
    cd g = tm_r * t.j[n], gt = tm_r * (t.j[n] + z * t.dj[n]);
    if (te_o != 0.0) {
      f += te_o * t.h[n];
      ft += te_o * (t.h[n] + z * t.dh[n]);
    }
    if (tm_o != 0.0) {
      g += tm_o * t.h[n];
      gt += tm_o * (t.h[n] + z * t.dh[n]);
    }
    d.f[n] = f; d.ft[n] = ft / z; d.fr[n] = f / z;
    d.g[n] = g; d.gt[n] = gt / z; d.gr[n] = g / z;
  }
  return d;
}

struct AngularData {
  double c = 1.0, s = 0.0;
  std::vector<double> pin, taun;
};

AngularData angular_data(int N, double c) {
  AngularData a;
  a.c = c;
  a.s = std::sqrt(std::max(0.0, 1.0 - c * c));
  a.pin.assign(N + 1, 0.0);
  a.taun.assign(N + 1, 0.0);
  if (N >= 1) a.pin[1] = 1.0;
  for (int n = 2; n <= N; ++n) a.pin[n] = ((2.0 * n - 1.0) * c * a.pin[n - 1] - n * a.pin[n - 2]) / (n - 1.0);
  for (int n = 1; n <= N; ++n) a.taun[n] = n * c * a.pin[n] - (n + 1.0) * a.pin[n - 1];
  return a;
}

std::vector<cd> expansion_factors(const MultipoleSolution& sol) {
  std::vector<cd> En(sol.N + 1, 0.0);
  const double E0 = std::sqrt(sol.medium.mu0);
  cd ipow = 1.0;
  for (int n = 1; n <= sol.N; ++n) {
    ipow *= I;
    En[n] = ipow * E0 * (2.0 * n + 1.0) / (n * (n + 1.0));
  }
  return En;
}

Ring series_ring(const MultipoleSolution& sol, const std::vector<cd>& En, const RadialData& rd, const AngularData& ad) {
  Ring out;
  cd er = 0.0, eth = 0.0, eph = 0.0, hr = 0.0, hth = 0.0, hph = 0.0;
  for (int n = 1; n <= sol.N; ++n) {
    const double nn = n * (n + 1.0);
    const double p = ad.pin[n], t = ad.taun[n];
    const cd e = En[n];
    er += e * (-I) * nn * ad.s * p * rd.gr[n];
    eth += e * (p * rd.f[n] - I * t * rd.gt[n]);
    eph += e * (-t * rd.f[n] + I * p * rd.gt[n]);
    hr += e * I * nn * ad.s * p * rd.fr[n];
    hth += e * (-p * rd.g[n] + I * t * rd.ft[n]);
    hph += e * (-t * rd.g[n] + I * p * rd.ft[n]);
  }
  const double ie = -1.0 / rd.eta;
  out.Er = er; out.Eth = eth; out.Eph = eph;
  out.Hr = ie * hr; out.Hth = ie * hth; out.Hph = ie * hph;
  return out;
}

Ring incident_ring(const MultipoleSolution& sol, double r, double c) {
  const double s = std::sqrt(std::max(0.0, 1.0 - c * c));
  const double k0 = sol.k.back();
  const cd ph = std::exp(I * (k0 * r * c));
  const double E0 = std::sqrt(sol.medium.mu0), H0 = std::sqrt(sol.medium.eps0);
  Ring g;
  g.Er = E0 * s * ph; g.Eth = E0 * c * ph; g.Eph = -E0 * ph;
  g.Hr = H0 * s * ph; g.Hth = H0 * c * ph; g.Hph = H0 * ph;
  return g;
}

// inc_weight multiplies the incident field added to a*total.
Ring combined_ring(const MultipoleSolution& sol, const std::vector<cd>& En, const RadialData& rd,
                   const AngularData& ad, double r, double a, double inc_weight) {
  Ring out;
  if (a != 0.0) out = scaled(series_ring(sol, En, rd, ad), a);
  const double wi = a * (rd.exterior ? 1.0 : 0.0) + inc_weight;
  if (wi != 0.0) out += scaled(incident_ring(sol, r, ad.c), wi);
  return out;
}

void part_weights(FieldPart part, double& a, double& b) {
  switch (part) {
    case FieldPart::Total: a = 1.0; b = 0.0; break;
    case FieldPart::Scattered: a = 1.0; b = -1.0; break;
    case FieldPart::Incident: a = 0.0; b = 1.0; break;
  }
}

FieldPair ring_to_cartesian(const MultipoleSolution& sol, const Ring& g, const AngularData& ad, double cp, double sp) {
  const double c = ad.c, s = ad.s;
  const Vec3 rh(s * cp, s * sp, c), th(c * cp, c * sp, -s), phh(-sp, cp, 0.0);
  const CVec3 El = (cp * g.Er) * rh.cast<cd>() + (cp * g.Eth) * th.cast<cd>() + (sp * g.Eph) * phh.cast<cd>();
  const CVec3 Hl = (sp * g.Hr) * rh.cast<cd>() + (sp * g.Hth) * th.cast<cd>() + (cp * g.Hph) * phh.cast<cd>();
  FieldPair f;
  f.E = El(0) * sol.e1.cast<cd>() + El(1) * sol.e2.cast<cd>() + El(2) * sol.e3.cast<cd>();
  f.H = Hl(0) * sol.e1.cast<cd>() + Hl(1) * sol.e2.cast<cd>() + Hl(2) * sol.e3.cast<cd>();
  return f;
}

FieldPair eval_weighted(const MultipoleSolution& sol, const Vec3& x, double a, double b) {
  const Vec3 xl(x.dot(sol.e1), x.dot(sol.e2), x.dot(sol.e3));
  const double r = xl.norm();
  double c = 1.0, cp = 1.0, sp = 0.0;
  if (r > 0.0) {
    c = std::clamp(xl(2) / r, -1.0, 1.0);
    const double rho = std::hypot(xl(0), xl(1));
    if (rho > 0.0) {
      cp = xl(0) / rho;
      sp = xl(1) / rho;
    }
  }
  const auto En = expansion_factors(sol);
  const auto rd = radial_data(sol, r);
  const auto ad = angular_data(sol.N, c);
  return ring_to_cartesian(sol, combined_ring(sol, En, rd, ad, r, a, b), ad, cp, sp);
}

bool isotropic_radial(const CoeffProfile& p) {
  return p.isotropic() && p.kind() != CoeffKind::RadialMatrix;
}

}  // namespace

FieldPair eval_fields(const MultipoleSolution& sol, const Vec3& x, FieldPart part) {
  if (part == FieldPart::Incident) return incident_fields(sol.inc, sol.medium.eps0, sol.medium.mu0, x);
  double a = 1.0, b = 0.0;
  part_weights(part, a, b);
  return eval_weighted(sol, x, a, b);
}

CVec3 far_field(const MultipoleSolution& sol, const Vec3& xhat_in) {
  const Vec3 xh = xhat_in.normalized();
  const Vec3 xl(xh.dot(sol.e1), xh.dot(sol.e2), xh.dot(sol.e3));
  const double c = std::clamp(xl(2), -1.0, 1.0);
  const double rho = std::hypot(xl(0), xl(1));
  const double cp = rho > 0.0 ? xl(0) / rho : 1.0, sp = rho > 0.0 ? xl(1) / rho : 0.0;
  const auto En = expansion_factors(sol);
  const auto ad = angular_data(sol.N, c);
  const double k = sol.k.back();
  cd Fth = 0.0, Fph = 0.0;
  cd mi = 1.0;  // (-i)^n
  for (int n = 1; n <= sol.N; ++n) {
    mi *= -I;
    const auto& o = sol.orders[n];
    // h_n(ρ) ~ (-i)^{n+1} e^{iρ}/ρ and (ρ h_n)'/ρ ~ (-i)^n e^{iρ}/ρ.
    const cd f = o.te_out.back() * (mi * (-I)) / k;
    const cd gt = o.tm_out.back() * mi / k;
    Fth += En[n] * (ad.pin[n] * f - I * ad.taun[n] * gt);
    Fph += En[n] * (-ad.taun[n] * f + I * ad.pin[n] * gt);
  }
  const double s = ad.s;
  const Vec3 th(c * cp, c * sp, -s), phh(-sp, cp, 0.0);
  const CVec3 Fl = (cp * Fth) * th.cast<cd>() + (sp * Fph) * phh.cast<cd>();
  return Fl(0) * sol.e1.cast<cd>() + Fl(1) * sol.e2.cast<cd>() + Fl(2) * sol.e3.cast<cd>();
}

double extinction_efficiency(const MultipoleSolution& sol) {
  const double x = sol.k.back() * std::max(sol.medium.outer_radius(), 1e-300);
  double acc = 0.0;
  for (int n = 1; n <= sol.N; ++n) acc += (2.0 * n + 1.0) * (sol.orders[n].a + sol.orders[n].b).real();
  return 2.0 * acc / (x * x);
}

double scattering_efficiency(const MultipoleSolution& sol) {
  const double x = sol.k.back() * std::max(sol.medium.outer_radius(), 1e-300);
  double acc = 0.0;
  for (int n = 1; n <= sol.N; ++n)
    acc += (2.0 * n + 1.0) * (std::norm(sol.orders[n].a) + std::norm(sol.orders[n].b));
  return 2.0 * acc / (x * x);
}

namespace {

EnergyPair energy_impl(const MultipoleSolution& sol, const CoeffProfile& eps, const CoeffProfile& mu,
                       const BallRule& rule, double a, const std::function<double(double)>& bfun) {
  EnergyPair out;
  if (isotropic_radial(eps) && isotropic_radial(mu)) {
    // The rule is rotation invariant, so integrate in the incidence frame and
    // do the azimuthal integral exactly: ∫cos² = ∫sin² = π.
    const auto En = expansion_factors(sol);
    std::vector<AngularData> ang;
    for (double c : rule.angular.cos_polar) ang.push_back(angular_data(sol.N, c));
    for (std::size_t ir = 0; ir < rule.radial.x.size(); ++ir) {
      const double r = rule.radial.x[ir];
      const auto rd = radial_data(sol, r);
      const double er = eps.scalar(r), mr = mu.scalar(r);
      const double b = bfun ? bfun(r) : 0.0;
      double accE = 0.0, accH = 0.0;
      for (std::size_t ip = 0; ip < ang.size(); ++ip) {
        const Ring g = combined_ring(sol, En, rd, ang[ip], r, a, b);
        const double e2 = std::norm(g.Er) + std::norm(g.Eth) + std::norm(g.Eph);
        const double h2 = std::norm(g.Hr) + std::norm(g.Hth) + std::norm(g.Hph);
        accE += rule.angular.w_polar[ip] * e2;
        accH += rule.angular.w_polar[ip] * h2;
      }
      out.E += rule.radial.w[ir] * pi * er * accE;
      out.H += rule.radial.w[ir] * pi * mr * accH;
    }
    return out;
  }
  rule.for_each_node([&](const Vec3& x, double w) {
    const double b = bfun ? bfun(x.norm()) : 0.0;
    const FieldPair f = eval_weighted(sol, x, a, b);
    out.E += w * quad_form(eps.value(x), f.E);
    out.H += w * quad_form(mu.value(x), f.H);
  });
  return out;
}

}  // namespace

EnergyPair weighted_energy(const MultipoleSolution& sol, const CoeffProfile& eps, const CoeffProfile& mu,
                           const BallRule& rule, FieldPart part) {
  double a = 1.0, b = 0.0;
  part_weights(part, a, b);
  return energy_impl(sol, eps, mu, rule, a, [b](double) { return b; });
}

EnergyPair weighted_energy_combined(const MultipoleSolution& sol, const CoeffProfile& eps,
                                    const CoeffProfile& mu, const BallRule& rule,
                                    const std::function<double(double)>& incident_weight) {
  return energy_impl(sol, eps, mu, rule, 1.0, incident_weight);
}

EnergyPair incident_inverse_energy(const PlaneWaveIncidence& inc, double eps0, double mu0,
                                   const CoeffProfile& eps, const CoeffProfile& mu, const BallRule& rule) {
  EnergyPair out;
  rule.for_each_node([&](const Vec3& x, double w) {
    const FieldPair f = incident_fields(inc, eps0, mu0, x);
    out.E += w * quad_form(eps.value(x).inverse(), f.E);
    out.H += w * quad_form(mu.value(x).inverse(), f.H);
  });
  return out;
}

FluxResult boundary_flux(const MultipoleSolution& sol, double R, double beta, const SphereRule& rule, FieldPart part) {
  FluxResult res;
  const double e0 = sol.medium.eps0, m0 = sol.medium.mu0;
  rule.for_each_node([&](const Vec3& x, double w) {
    const FieldPair f = eval_fields(sol, x, part);
    FieldSample s;
    s.x = x;
    s.E = f.E;
    s.H = f.H;
    s.eps = e0 * Mat3::Identity();
    s.mu = m0 * Mat3::Identity();
    s.beta = beta;
    res.value += w * q_beta(s).dot(x / R);
    res.scale += w * R * (e0 * f.E.squaredNorm() + m0 * f.H.squaredNorm());
  });
  return res;
}

BallRule energy_rule(const MultipoleSolution& sol, double R, int n_r, int n_phi, int n_theta,
                     const std::vector<double>& extra_breaks) {
  std::vector<double> breaks;
  for (double r : sol.medium.radii)
    if (r < R) breaks.push_back(r);
  for (double r : extra_breaks)
    if (r > 0.0 && r < R) breaks.push_back(r);
  std::sort(breaks.begin(), breaks.end());
  double widest = 0.0, prev = 0.0;
  for (double b : breaks) {
    widest = std::max(widest, b - prev);
    prev = b;
  }
  widest = std::max(widest, R - prev);
  const double kmax = *std::max_element(sol.k.begin(), sol.k.end());
  const int nr = std::max(n_r, static_cast<int>(std::ceil(kmax * widest)) + 20);
  const int np = std::max({n_phi, sol.N + 8, static_cast<int>(std::ceil(0.75 * sol.k.back() * R)) + 16});
  const int nt = std::max(n_theta, 2 * sol.N + 8);
  return ball_rule(R, nr, np, nt, breaks);
}

}  // namespace maxstab
