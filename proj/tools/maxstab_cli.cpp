// SPDX-License-Identifier: Apache-2.0
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "maxstab/config.hpp"
#include "maxstab/plot.hpp"
#include "maxstab/suites.hpp"
#include "maxstab/sweep.hpp"

namespace {

int write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return 0;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    std::cerr << "error: cannot write '" << path << "'\n";
    return 2;
  }
  out << text;
  return 0;
}

int run_sweep_verb(const std::string& config_path, std::string out_path) {
  maxstab::SweepConfig cfg;
  try {
    cfg = maxstab::load_config(config_path);
  } catch (const maxstab::ConfigError& e) {
    std::cerr << config_path << ": " << e.what() << "\n";
    return 2;
  }
  if (out_path.empty()) out_path = cfg.csv_path;
  maxstab::SweepResult res;
  try {
    res = maxstab::run_sweep(cfg);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  std::ostringstream csv;
  maxstab::write_sweep_csv(csv, cfg, res);
  if (const int rc = write_output(out_path, csv.str())) return rc;
  std::cerr << "rows: " << res.rows.size() << ", monotone medium: " << (res.monotone ? "yes" : "no")
            << ", failures: " << res.failures << ", errors: " << res.errors << "\n";
  for (maxstab::BoundId id : cfg.bounds)
    std::cerr << "max lhs/rhs for " << maxstab::to_string(id) << ": " << res.max_ratio(id) << "\n";
  if (cfg.refine.enabled && res.resonances.empty())
    std::cerr << "no resonance candidates found; try a smaller refine.scan_step or a larger refine.max_omega\n";
  return res.exit_code();
}

int run_suite_verb(const std::string& selector, const maxstab::SuiteOptions& opt, const std::string& out_path) {
  std::vector<maxstab::SuiteRow> rows;
  try {
    rows = maxstab::run_suites(selector, opt);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  std::ostringstream csv;
  maxstab::write_suite_csv(csv, rows);
  if (const int rc = write_output(out_path, csv.str())) return rc;
  int failed = 0;
  for (const auto& r : rows) failed += r.pass ? 0 : 1;
  std::cerr << rows.size() - failed << "/" << rows.size() << " checks passed\n";
  return failed ? 1 : 0;
}

int run_plot_verb(const std::string& csv_path, const std::string& kind, const std::string& svg_path) {
  try {
    maxstab::emit_plot(csv_path, maxstab::plot_kind_from_string(kind), svg_path);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Frequency-explicit Maxwell stability verification toolkit"};
  app.set_version_flag("--version", std::string(MAXSTAB_VERSION));
  app.require_subcommand(1);

  std::string config_path, sweep_out;
  auto* sweep = app.add_subcommand("sweep", "Run a frequency sweep described by a JSON config");
  sweep->add_option("config", config_path, "Config file")->required();
  sweep->add_option("-o,--output", sweep_out, "CSV output path (default: output.csv from the config, else stdout)");

  std::string selector, suite_out;
  maxstab::SuiteOptions suite_opt;
  auto* suite = app.add_subcommand("suite", "Run verification suites");
  suite->add_option("selector", selector, "identities, mollifier, sharpness or all")
      ->required()
      ->check(CLI::IsMember({"identities", "mollifier", "sharpness", "all"}));
  suite->add_option("--trace", suite_opt.trace_path, "Write the mollifier radial trace CSV here");
  suite->add_option("--seed", suite_opt.seed, "Seed for randomized checks");
  suite->add_option("-o,--output", suite_out, "CSV output path (default stdout)");

  std::string plot_csv, plot_kind, plot_out;
  auto* plot = app.add_subcommand("plot", "Render an SVG plot from a sweep or trace CSV");
  plot->add_option("csv", plot_csv, "Input CSV")->required();
  plot->add_option("--kind", plot_kind, "ratio_vs_omega, margin_vs_omega or mollifier_trace")->required();
  plot->add_option("-o,--output", plot_out, "SVG output path")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  if (*sweep) return run_sweep_verb(config_path, sweep_out);
  if (*suite) return run_suite_verb(selector, suite_opt, suite_out);
  return run_plot_verb(plot_csv, plot_kind, plot_out);
}
