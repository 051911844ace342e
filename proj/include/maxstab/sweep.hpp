// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "maxstab/config.hpp"

namespace maxstab {

struct SweepRow {
  BoundReport report;
  bool refined = false;
  bool error = false;
};

struct ResonanceCandidate {
  double omega = 0.0;
  double proxy = 0.0;
};

// Largest interior multipole amplitude max_n max_j (|te_j| + |tm_j|) over the
// shells of the medium. Spikes mark quasi-resonant frequencies.
double resonance_proxy(const LayeredMedium& medium, const PlaneWaveIncidence& inc);

// Scans the proxy on a uniform grid, keeps the strongest local maxima and
// sharpens each by golden-section search inside its grid bracket. Sorted by
// decreasing proxy.
std::vector<ResonanceCandidate> find_resonances(const LayeredMedium& medium, const Vec3& d, const Vec3& A,
                                                const RefineConfig& refine);

struct SweepResult {
  std::vector<SweepRow> rows;  // sorted by omega, then by configured bound order
  CoeffSummary summary;
  bool monotone = true;
  int failures = 0;  // failing rows on a monotone medium
  int errors = 0;    // rows whose solve or evaluation threw
  std::vector<ResonanceCandidate> resonances;

  // 2 if any row errored, else 1 if a monotone-medium bound failed, else 0.
  int exit_code() const;
  // Largest lhs/rhs over non-error rows with the given bound id (0 if none).
  double max_ratio(BoundId id, bool refined_only = false) const;
};

SweepResult run_sweep(const SweepConfig& cfg);

// Comment header lines (prefixed with '#') followed by the fixed columns
// omega,bound_id,lhs,rhs,margin,pass,n_trunc,tail,notes.
void write_sweep_csv(std::ostream& out, const SweepConfig& cfg, const SweepResult& result);

}  // namespace maxstab
