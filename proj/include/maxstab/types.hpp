// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <complex>
#include <numbers>

#include <Eigen/Dense>

namespace maxstab {

using cd = std::complex<double>;
using Vec3 = Eigen::Vector3d;
using CVec3 = Eigen::Vector3cd;
using Mat3 = Eigen::Matrix3d;
using CMat3 = Eigen::Matrix3cd;

inline constexpr double pi = std::numbers::pi;
inline constexpr cd I{0.0, 1.0};

// Bilinear (non-conjugating) dot product a·b.
inline cd bdot(const CVec3& a, const CVec3& b) { return a(0) * b(0) + a(1) * b(1) + a(2) * b(2); }
inline cd bdot(const CVec3& a, const Vec3& b) { return a(0) * b(0) + a(1) * b(1) + a(2) * b(2); }

// Sesquilinear form (M a)·conj(a), real for symmetric real M.
inline double quad_form(const Mat3& M, const CVec3& a) {
  return (M.cast<cd>() * a).dot(a).real();
}

// Bilinear cross product (Eigen's cross conjugates complex results).
inline CVec3 ccross(const CVec3& a, const CVec3& b) {
  return CVec3(a(1) * b(2) - a(2) * b(1), a(2) * b(0) - a(0) * b(2), a(0) * b(1) - a(1) * b(0));
}

double min_eigenvalue_sym(const Mat3& M);
double max_eigenvalue_sym(const Mat3& M);

}  // namespace maxstab
