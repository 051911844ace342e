// SPDX-License-Identifier: Apache-2.0
#include "maxstab/special_functions.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace maxstab {

SphericalBesselTable bessel_table(int order_max, double z) {
  if (!(z > 0.0)) throw std::invalid_argument("bessel_table: argument must be positive");
  if (z < 1e-8) throw std::domain_error("bessel_table: argument underflow, evaluate limit form instead");
  if (order_max < 0 || order_max > kBesselOrderCap)
    throw std::invalid_argument("bessel_table: order above cap");

  const int N = order_max;
  const int M = N + 1;  // one extra order for derivative ladders
  const int start = M + std::max(20, static_cast<int>(std::ceil(1.5 * z)));

  std::vector<double> jr(static_cast<std::size_t>(start) + 2, 0.0);
  jr[start + 1] = 0.0;
  jr[start] = 1e-300;
  for (int n = start; n >= 1; --n) {
    jr[n - 1] = (2.0 * n + 1.0) / z * jr[n] - jr[n + 1];
    if (std::abs(jr[n - 1]) > 1e200) {
      for (int k = n - 1; k <= start + 1; ++k) jr[k] *= 1e-200;
    }
  }
  const double s = std::sin(z), c = std::cos(z);
  const double j0 = s / z;
  const double j1 = s / (z * z) - c / z;
  const double scale = std::abs(j0) >= std::abs(j1) ? j0 / jr[0] : j1 / jr[1];

  SphericalBesselTable t;
  t.order_max = N;
  t.z = z;
  std::vector<double> j(M + 1), y(M + 1);
  for (int n = 0; n <= M; ++n) j[n] = jr[n] * scale;
  y[0] = -c / z;
  y[1] = -c / (z * z) - s / z;
  for (int n = 1; n < M; ++n) y[n + 1] = (2.0 * n + 1.0) / z * y[n] - y[n - 1];

  t.j.assign(j.begin(), j.begin() + N + 1);
  t.y.assign(y.begin(), y.begin() + N + 1);
  t.dj.resize(N + 1);
  t.dy.resize(N + 1);
  t.h.resize(N + 1);
  t.dh.resize(N + 1);
  t.dj[0] = -j[1];
  t.dy[0] = -y[1];
  for (int n = 1; n <= N; ++n) {
    t.dj[n] = j[n - 1] - (n + 1.0) / z * j[n];
    t.dy[n] = y[n - 1] - (n + 1.0) / z * y[n];
  }
  for (int n = 0; n <= N; ++n) {
    t.h[n] = cd(t.j[n], t.y[n]);
    t.dh[n] = cd(t.dj[n], t.dy[n]);
  }
  return t;
}

RiccatiBessel riccati_derivatives(const SphericalBesselTable& t) {
  RiccatiBessel r;
  const std::size_t n = t.j.size();
  r.psi.resize(n);
  r.dpsi.resize(n);
  r.xi.resize(n);
  r.dxi.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    r.psi[k] = t.z * t.j[k];
    r.dpsi[k] = t.j[k] + t.z * t.dj[k];
    r.xi[k] = t.z * t.h[k];
    r.dxi[k] = t.h[k] + t.z * t.dh[k];
  }
  return r;
}

}  // namespace maxstab
