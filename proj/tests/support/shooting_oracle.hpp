// SPDX-License-Identifier: Apache-2.0
// Independent Mie reference: integrates the radial Debye-potential equations
// u'' = (n(n+1)/r² − k(r)²) u with Boost.Odeint from a power-series start at
// small r, applies u and u'/p continuity at interfaces (p = μ for the TE
// channel, p = ε for TM) and matches to libstdc++ spherical Bessel functions
// outside. Shares no code with the library's solver.
#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <utility>
#include <vector>

#include <boost/numeric/odeint.hpp>

namespace oracle {

using cd = std::complex<double>;

struct Layers {
  std::vector<double> radii, eps, mu;
  double eps0 = 1.0, mu0 = 1.0;
};

// Riccati–Bessel ψ_n(z) = z j_n(z), ξ_n(z) = z (j_n + i y_n) and derivatives.
inline void riccati(int n, double z, double& psi, double& dpsi, cd& xi, cd& dxi) {
  const double j = std::sph_bessel(n, z), y = std::sph_neumann(n, z);
  const double jm = n > 0 ? std::sph_bessel(n - 1, z) : std::cos(z) / z;
  const double ym = n > 0 ? std::sph_neumann(n - 1, z) : std::sin(z) / z;
  // (z f_n)' = z f_{n-1} − n f_n for f = j, y.
  psi = z * j;
  dpsi = z * jm - n * j;
  xi = cd(z * j, z * y);
  dxi = cd(z * jm - n * j, z * ym - n * y);
}

using State = std::array<double, 2>;

// Regular solution normalized as r^{n+1}(1 + …) at r0 from the ψ_n series.
inline State series_start(int n, double k, double r0) {
  double term = 1.0, sum = 1.0, dsum = n + 1.0;
  const double z2 = k * k * r0 * r0;
  for (int m = 1; m <= 6; ++m) {
    term *= -z2 / (2.0 * m * (2.0 * n + 2.0 * m + 1.0));
    sum += term;
    dsum += term * (n + 1.0 + 2.0 * m);
  }
  const double scale = std::pow(r0, n);
  return {scale * r0 * sum, scale * dsum};
}

// Scattering coefficients (a_n, b_n) in the convention where the exterior
// potential is ψ_n(k0 r) − c ξ_n(k0 r) with c = a_n (TM) or b_n (TE).
inline std::pair<cd, cd> coefficients(const Layers& L, double omega, int n) {
  namespace ode = boost::numeric::odeint;
  const double k0 = omega * std::sqrt(L.eps0 * L.mu0);
  const double rL = L.radii.back();
  cd out[2];
  for (int channel = 0; channel < 2; ++channel) {  // 0 = TM (ε), 1 = TE (μ)
    const auto& p = channel == 0 ? L.eps : L.mu;
    const double p0 = channel == 0 ? L.eps0 : L.mu0;
    const double k1 = omega * std::sqrt(L.eps[0] * L.mu[0]);
    const double r0 = std::min(1e-3 * L.radii[0], 1e-3 / std::max(1.0, k1));
    State u = series_start(n, k1, r0);
    double r = r0;
    for (std::size_t j = 0; j < L.radii.size(); ++j) {
      const double kj2 = omega * omega * L.eps[j] * L.mu[j];
      auto rhs = [&](const State& s, State& ds, double t) {
        ds[0] = s[1];
        ds[1] = (n * (n + 1.0) / (t * t) - kj2) * s[0];
      };
      auto stepper = ode::make_controlled(0.0, 1e-13, ode::runge_kutta_dopri5<State>());
      // Rescale to keep the magnitude near one; only u'/u matters.
      const double s0 = std::abs(u[0]) > 0.0 ? std::abs(u[0]) : 1.0;
      u[0] /= s0;
      u[1] /= s0;
      ode::integrate_adaptive(stepper, rhs, u, r, L.radii[j], 1e-4 * (L.radii[j] - r));
      r = L.radii[j];
      const double p_next = j + 1 < L.radii.size() ? p[j + 1] : p0;
      u[1] *= p_next / p[j];
    }
    const double Lr = u[1] / u[0];
    double psi, dpsi;
    cd xi, dxi;
    riccati(n, k0 * rL, psi, dpsi, xi, dxi);
    out[channel] = (k0 * dpsi - Lr * psi) / (k0 * dxi - Lr * xi);
  }
  return {out[0], out[1]};
}

// x-component of the total electric field at z on the positive axis for
// incidence along +z polarized along +x with unit amplitude, built from the
// on-axis reduction of the multipole series (angular functions equal
// n(n+1)/2 at θ = 0).
inline cd axis_field_x(const Layers& L, double omega, double z, int order_max) {
  const double k0 = omega * std::sqrt(L.eps0 * L.mu0);
  const double rho = k0 * z;
  cd sum = std::exp(cd(0.0, rho));
  for (int n = 1; n <= order_max; ++n) {
    const auto [a, b] = coefficients(L, omega, n);
    double psi, dpsi;
    cd xi, dxi;
    riccati(n, rho, psi, dpsi, xi, dxi);
    const cd En = std::pow(cd(0.0, 1.0), n) * (2.0 * n + 1.0) / 2.0;
    sum += En * (cd(0.0, 1.0) * a * dxi / rho - b * xi / rho);
  }
  return sum;
}

}  // namespace oracle
