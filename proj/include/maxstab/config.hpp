// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "maxstab/bounds.hpp"
#include "maxstab/mie.hpp"

namespace maxstab {

// Parse or validation failure. line and column are 1-based and zero when the
// problem is not tied to a text position; field is a dotted path such as
// "medium.layers[1].r".
class ConfigError : public std::runtime_error {
 public:
  ConfigError(const std::string& what, std::string field, int line = 0, int column = 0)
      : std::runtime_error(what), field_(std::move(field)), line_(line), column_(column) {}
  const std::string& field() const { return field_; }
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  std::string field_;
  int line_, column_;
};

struct RefineConfig {
  bool enabled = false;
  double min_omega = 0.5;
  double max_omega = 64.0;
  double scan_step = 0.01;
  int peaks = 4;
};

struct SweepConfig {
  std::string medium_label;  // "example1", "example3" or "layers"
  LayeredMedium medium;
  double R = 2.0;
  double R_scat = 1.0;
  Vec3 d = Vec3::UnitZ();
  Vec3 A = Vec3::UnitX();
  std::vector<double> omegas;
  RefineConfig refine;
  std::vector<BoundId> bounds{BoundId::Thm22, BoundId::Scat};
  BoundQuadrature quadrature;
  unsigned seed = 20240611u;
  std::string csv_path;

  std::string canonical;  // normalized JSON of the parsed configuration
  std::uint64_t hash = 0; // FNV-1a of canonical
};

SweepConfig parse_config(const std::string& text);
SweepConfig load_config(const std::string& path);

std::uint64_t fnv1a64(const std::string& s);

}  // namespace maxstab
