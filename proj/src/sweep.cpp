// SPDX-License-Identifier: Apache-2.0
#include "maxstab/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include "maxstab/parallel.hpp"

namespace maxstab {

double resonance_proxy(const LayeredMedium& medium, const PlaneWaveIncidence& inc) {
  const MultipoleSolution sol = solve_layered(medium, inc);
  const std::size_t L = sol.medium.radii.size();
  double best = 0.0;
  for (int n = 1; n <= sol.N; ++n) {
    const OrderCoefficients& c = sol.orders[n];
    for (std::size_t j = 0; j < L; ++j)
      best = std::max(best, std::abs(c.te_reg[j]) + std::abs(c.te_out[j]) + std::abs(c.tm_reg[j]) +
                                std::abs(c.tm_out[j]));
  }
  return best;
}

namespace {

double safe_proxy(const LayeredMedium& medium, const Vec3& d, const Vec3& A, double omega) {
  try {
    return resonance_proxy(medium, PlaneWaveIncidence{d, A, omega});
  } catch (const MieTruncationError&) {
    return 0.0;
  }
}

ResonanceCandidate golden_max(const LayeredMedium& medium, const Vec3& d, const Vec3& A, double a, double b) {
  const double g = 0.5 * (std::sqrt(5.0) - 1.0);
  double x1 = b - g * (b - a), x2 = a + g * (b - a);
  double f1 = safe_proxy(medium, d, A, x1), f2 = safe_proxy(medium, d, A, x2);
  while (b - a > 1e-10 * std::max(1.0, b)) {
    if (f1 >= f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - g * (b - a);
      f1 = safe_proxy(medium, d, A, x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + g * (b - a);
      f2 = safe_proxy(medium, d, A, x2);
    }
  }
  return f1 >= f2 ? ResonanceCandidate{x1, f1} : ResonanceCandidate{x2, f2};
}

}  // namespace

std::vector<ResonanceCandidate> find_resonances(const LayeredMedium& medium, const Vec3& d, const Vec3& A,
                                                const RefineConfig& refine) {
  const double lo = refine.min_omega, step = refine.scan_step;
  const std::size_t n = static_cast<std::size_t>(std::floor((refine.max_omega - lo) / step + 1e-9)) + 1;
  std::vector<double> grid(n), proxy(n);
  for (std::size_t i = 0; i < n; ++i) grid[i] = lo + step * static_cast<double>(i);
  parallel_for(n, [&](std::size_t i) { proxy[i] = safe_proxy(medium, d, A, grid[i]); });

  std::vector<std::size_t> peaks;
  for (std::size_t i = 1; i + 1 < n; ++i)
    if (proxy[i] > proxy[i - 1] && proxy[i] >= proxy[i + 1]) peaks.push_back(i);
  std::stable_sort(peaks.begin(), peaks.end(), [&](std::size_t a, std::size_t b) { return proxy[a] > proxy[b]; });
  if (peaks.size() > static_cast<std::size_t>(refine.peaks)) peaks.resize(refine.peaks);

  std::vector<ResonanceCandidate> out(peaks.size());
  parallel_for(peaks.size(), [&](std::size_t k) {
    const std::size_t i = peaks[k];
    out[k] = golden_max(medium, d, A, grid[i - 1], grid[i + 1]);
    if (out[k].proxy < proxy[i]) out[k] = {grid[i], proxy[i]};
  });
  std::stable_sort(out.begin(), out.end(),
                   [](const ResonanceCandidate& a, const ResonanceCandidate& b) { return a.proxy > b.proxy; });
  return out;
}

int SweepResult::exit_code() const {
  if (errors > 0) return 2;
  if (failures > 0) return 1;
  return 0;
}

double SweepResult::max_ratio(BoundId id, bool refined_only) const {
  double best = 0.0;
  for (const auto& r : rows) {
    if (r.error || r.report.bound_id != id) continue;
    if (refined_only && !r.refined) continue;
    best = std::max(best, r.report.ratio());
  }
  return best;
}

namespace {

std::vector<SweepRow> rows_at(const SweepConfig& cfg, const CoeffSummary& summary, double omega, bool refined) {
  std::vector<SweepRow> rows;
  const PlaneWaveIncidence inc{cfg.d, cfg.A, omega};
  auto error_rows = [&](const std::string& what, double tail) {
    for (BoundId id : cfg.bounds) {
      SweepRow row;
      row.refined = refined;
      row.error = true;
      const double nan = std::numeric_limits<double>::quiet_NaN();
      row.report.omega = omega;
      row.report.bound_id = id;
      row.report.lhs = row.report.rhs = row.report.margin = nan;
      row.report.tail = tail;
      row.report.monotone = summary.eps_monotone && summary.mu_monotone;
      row.report.summary = summary;
      row.report.notes = "solver error: " + what;
      rows.push_back(row);
    }
  };
  MultipoleSolution sol;
  try {
    sol = solve_layered(cfg.medium, inc);
  } catch (const MieTruncationError& e) {
    error_rows(e.what(), e.tail());
    return rows;
  } catch (const std::exception& e) {
    error_rows(e.what(), 0.0);
    return rows;
  }
  for (BoundId id : cfg.bounds) {
    SweepRow row;
    row.refined = refined;
    try {
      row.report = verify_transmission_bound(sol, summary, cfg.R, cfg.R_scat, id, cfg.quadrature);
    } catch (const std::exception& e) {
      row.error = true;
      row.report.omega = omega;
      row.report.bound_id = id;
      row.report.lhs = row.report.rhs = row.report.margin = std::numeric_limits<double>::quiet_NaN();
      row.report.notes = std::string("evaluation error: ") + e.what();
    }
    if (refined) row.report.notes += row.report.notes.empty() ? "refined" : ";refined";
    rows.push_back(row);
  }
  return rows;
}

}  // namespace

SweepResult run_sweep(const SweepConfig& cfg) {
  SweepResult res;
  res.summary = summarize(cfg.medium.eps_profile(), cfg.medium.mu_profile());
  res.monotone = res.summary.eps_monotone && res.summary.mu_monotone;

  std::vector<std::pair<double, bool>> points;
  for (double w : cfg.omegas) points.emplace_back(w, false);
  if (cfg.refine.enabled) {
    res.resonances = find_resonances(cfg.medium, cfg.d, cfg.A, cfg.refine);
    for (const auto& c : res.resonances) points.emplace_back(c.omega, true);
  }
  std::stable_sort(points.begin(), points.end(),
                   [](const auto& a, const auto& b) { return a.first < b.first; });

  std::vector<std::vector<SweepRow>> per_point(points.size());
  parallel_for(points.size(), [&](std::size_t i) {
    per_point[i] = rows_at(cfg, res.summary, points[i].first, points[i].second);
  });
  for (auto& chunk : per_point)
    for (auto& row : chunk) {
      if (row.error)
        ++res.errors;
      else if (res.monotone && !row.report.pass)
        ++res.failures;
      res.rows.push_back(std::move(row));
    }
  return res;
}

namespace {

std::string fmt(double v) {
  if (std::isnan(v)) return "nan";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12e", v);
  return buf;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c == '\n' ? ' ' : c;
  }
  return out + "\"";
}

}  // namespace

void write_sweep_csv(std::ostream& out, const SweepConfig& cfg, const SweepResult& result) {
  char hash[32];
  std::snprintf(hash, sizeof hash, "%016llx", static_cast<unsigned long long>(cfg.hash));
  out << "# maxstab " << MAXSTAB_VERSION << "\n";
  out << "# config_hash: " << hash << "\n";
  out << "# quadrature: n_r=" << cfg.quadrature.n_r << " n_phi=" << cfg.quadrature.n_phi
      << " n_theta=" << cfg.quadrature.n_theta << "\n";
  out << "# seed: " << cfg.seed << "\n";
  out << "# medium: " << cfg.medium_label << " monotone=" << (result.monotone ? "true" : "false") << "\n";
  for (BoundId id : cfg.bounds) out << "# max_ratio " << to_string(id) << ": " << fmt(result.max_ratio(id)) << "\n";
  for (const auto& c : result.resonances)
    out << "# resonance_candidate: omega=" << fmt(c.omega) << " proxy=" << fmt(c.proxy) << "\n";
  out << "omega,bound_id,lhs,rhs,margin,pass,n_trunc,tail,notes\n";
  for (const auto& row : result.rows) {
    const BoundReport& r = row.report;
    out << fmt(r.omega) << ',' << to_string(r.bound_id) << ',' << fmt(r.lhs) << ',' << fmt(r.rhs) << ','
        << fmt(r.margin) << ',' << (row.error ? "error" : r.pass ? "true" : "false") << ',' << r.n_trunc << ','
        << fmt(r.tail) << ',' << csv_field(r.notes) << "\n";
  }
}

}  // namespace maxstab
