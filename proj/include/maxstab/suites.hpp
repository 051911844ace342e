// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "maxstab/mollifier.hpp"

namespace maxstab {

enum class CheckKind {
  AtMost,   // value <= tolerance
  AtLeast,  // value >= tolerance
  Near,     // |value - target| <= tolerance
};

struct SuiteRow {
  std::string id;
  double value = 0.0;
  double tolerance = 0.0;
  double target = 0.0;  // used by Near
  CheckKind kind = CheckKind::AtMost;
  bool pass = false;
};

struct SuiteOptions {
  unsigned seed = 20240611u;
  std::string trace_path;  // mollifier radial trace CSV, empty to skip
};

// selector: identities, mollifier, sharpness or all. Throws
// std::invalid_argument for any other selector.
std::vector<SuiteRow> run_suites(const std::string& selector, const SuiteOptions& opt = {});

// Header line "id,value,tolerance,status" then one row per check.
void write_suite_csv(std::ostream& out, const std::vector<SuiteRow>& rows);

void write_trace_csv(std::ostream& out, const std::vector<TracePoint>& trace);

}  // namespace maxstab
