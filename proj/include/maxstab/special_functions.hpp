// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <vector>

#include "maxstab/types.hpp"

namespace maxstab {

inline constexpr int kBesselOrderCap = 256;

// Spherical Bessel functions j_n, y_n, h_n = j_n + i y_n and their derivatives
// for n = 0..order_max at a positive real argument.
struct SphericalBesselTable {
  int order_max = 0;
  double z = 0.0;
  std::vector<double> j, y, dj, dy;
  std::vector<cd> h, dh;
};

// Throws std::domain_error for z < 1e-8 (use the small-argument limit form)
// and std::invalid_argument for order_max above kBesselOrderCap or z <= 0.
SphericalBesselTable bessel_table(int order_max, double z);

struct RiccatiBessel {
  std::vector<double> psi, dpsi;  // psi_n = z j_n
  std::vector<cd> xi, dxi;        // xi_n = z h_n
};

RiccatiBessel riccati_derivatives(const SphericalBesselTable& t);

}  // namespace maxstab
