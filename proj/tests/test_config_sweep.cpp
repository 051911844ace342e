// SPDX-License-Identifier: Apache-2.0
#include <catch2/catch_amalgamated.hpp>

#include <sstream>

#include "maxstab/config.hpp"
#include "maxstab/plot.hpp"
#include "maxstab/suites.hpp"
#include "maxstab/sweep.hpp"

using namespace maxstab;

namespace {

const char* kUniform = R"({
  "medium": {"layers": []},
  "R": 2.0,
  "R_scat": 1.0,
  "omega": [1, 4],
  "quadrature": {"n_r": 12, "n_phi": 12, "n_theta": 24}
})";

ConfigError config_error(const std::string& text) {
  try {
    parse_config(text);
  } catch (const ConfigError& e) {
    return e;
  }
  FAIL("expected a ConfigError");
  return ConfigError("", "");
}

std::vector<std::string> lines_of(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

}  // namespace

TEST_CASE("syntax errors report line and column") {
  const ConfigError e = config_error("{\n  \"R\": 2.0,\n  \"omega\": [1, 2,]\n}");
  CHECK(e.line() == 3);
  CHECK(e.column() > 0);
  CHECK(std::string(e.what()).find("line 3") != std::string::npos);
}

TEST_CASE("comments are accepted") {
  const SweepConfig c = parse_config(std::string("// leading comment\n") + kUniform);
  CHECK(c.omegas.size() == 2);
}

TEST_CASE("semantic errors carry a field path") {
  CHECK(config_error(R"({"medium": {"layers": []}, "R": 2, "omega": [1], "colour": 1})").field() == "colour");
  CHECK(config_error(R"({"medium": {"layers": []}, "omega": [1]})").field() == "R");
  CHECK(config_error(R"({"medium": {"layers": [{"r": 1, "eps": 2, "mu": 1}, {"r": 0.5, "eps": 2, "mu": 1}]},
                         "R": 2, "omega": [1]})")
            .field() == "medium.layers[1].r");
  CHECK(config_error(R"({"medium": {"layers": [{"r": 1, "eps": -2, "mu": 1}]}, "R": 2, "omega": [1]})").field() ==
        "medium.layers[0].eps");
  CHECK(config_error(R"({"medium": {"layers": []}, "R": 2, "omega": [1, 0]})").field() == "omega[1]");
  CHECK(config_error(R"({"medium": {"layers": []}, "R": 2, "omega": []})").field() == "omega");
  CHECK(config_error(R"({"medium": {"example": "example2"}, "R": 2, "omega": [1]})").field() == "medium.example");
  CHECK(config_error(R"({"medium": {"layers": []}, "R": 2, "omega": [1], "bounds": ["thm21"]})").field().rfind(
            "bounds", 0) == 0);
  CHECK(config_error(R"({"medium": {"example": "example1", "r1": 1.5}, "R": 2, "R_scat": 1, "omega": [1]})")
            .field() == "R_scat");
  CHECK(config_error(R"({"medium": {"layers": []}, "R": 1, "R_scat": 1, "omega": [1]})").field() == "R");
  CHECK(config_error(R"({"medium": {"layers": []}, "R": 2, "omega": [1],
                         "incidence": {"d": [0, 0, 1], "A": [0, 1, 1]}})")
            .field()
            .rfind("incidence", 0) == 0);
  CHECK(config_error(R"({"medium": {"layers": []}, "R": 2, "omega": [1], "quadrature": {"n_r": 2.5}})").field() ==
        "quadrature.n_r");
}

TEST_CASE("named examples expand") {
  const SweepConfig e1 = parse_config(R"({"medium": {"example": "example1"}, "eps0": 2, "R": 2, "omega": [1]})");
  CHECK(e1.medium_label == "example1");
  REQUIRE(e1.medium.radii.size() == 1);
  CHECK(e1.medium.radii[0] == 1.0);
  CHECK(e1.medium.eps[0] == 1.0);
  CHECK(e1.medium.mu[0] == 1.0);
  CHECK(e1.medium.eps0 == 2.0);
  CHECK(e1.R_scat == 1.0);

  const SweepConfig e3 = parse_config(R"({"medium": {"example": "example3"}, "R": 2, "omega": [1]})");
  CHECK(e3.medium_label == "example3");
  CHECK(e3.medium.radii.size() > 3);
  CHECK(e3.medium.radii.back() <= 1.0);
  // Values 1 - 2^-j saturate at 1 in double precision for large j.
  for (std::size_t i = 1; i < e3.medium.eps.size(); ++i) {
    CHECK(e3.medium.eps[i] >= e3.medium.eps[i - 1]);
    if (i < 40) CHECK(e3.medium.eps[i] > e3.medium.eps[i - 1]);
  }
}

TEST_CASE("log range frequencies and refine defaults") {
  const SweepConfig c = parse_config(
      R"({"medium": {"layers": []}, "R": 2, "omega": {"log_range": [0.5, 32], "count": 13}, "refine": {}})");
  REQUIRE(c.omegas.size() == 13);
  CHECK(c.omegas.front() == 0.5);
  CHECK(c.omegas.back() == 32.0);
  CHECK(c.omegas[6] == Catch::Approx(4.0).epsilon(1e-13));
  CHECK(c.refine.enabled);
  CHECK(c.refine.peaks == 4);
}

TEST_CASE("canonical hash ignores the output path") {
  const SweepConfig a = parse_config(kUniform);
  std::string with_out = kUniform;
  with_out.insert(with_out.rfind('}'), ", \"output\": {\"csv\": \"x.csv\"}");
  const SweepConfig b = parse_config(with_out);
  CHECK(b.csv_path == "x.csv");
  CHECK(a.hash == b.hash);
  CHECK(a.hash == fnv1a64(a.canonical));
  std::string other = kUniform;
  other.replace(other.find("[1, 4]"), 6, "[1, 5]");
  CHECK(parse_config(other).hash != a.hash);
  CHECK(fnv1a64("") == 0xcbf29ce484222325ull);
  CHECK(fnv1a64("a") == 0xaf63dc4c8601ec8cull);
}

TEST_CASE("uniform sweep passes and writes the fixed CSV layout") {
  const SweepConfig cfg = parse_config(kUniform);
  const SweepResult res = run_sweep(cfg);
  REQUIRE(res.rows.size() == 4);
  CHECK(res.monotone);
  CHECK(res.failures == 0);
  CHECK(res.errors == 0);
  CHECK(res.exit_code() == 0);
  for (const auto& row : res.rows) CHECK(row.report.pass);
  CHECK(res.rows[0].report.omega <= res.rows[2].report.omega);

  std::ostringstream out;
  write_sweep_csv(out, cfg, res);
  const auto lines = lines_of(out.str());
  std::size_t header = 0;
  while (header < lines.size() && lines[header].rfind('#', 0) == 0) ++header;
  REQUIRE(header < lines.size());
  CHECK(lines[header] == "omega,bound_id,lhs,rhs,margin,pass,n_trunc,tail,notes");
  CHECK(lines.size() == header + 5);
  CHECK(out.str().find("# config_hash: ") != std::string::npos);
  CHECK(out.str().find("# seed: 20240611") != std::string::npos);

  std::istringstream in(out.str());
  const CsvTable t = read_csv(in);
  CHECK(t.rows.size() == 4);
  CHECK(t.rows[0][t.column("bound_id")] == "thm22");
  CHECK(t.rows[1][t.column("bound_id")] == "scat");
  CHECK(t.rows[0][t.column("pass")] == "true");
  CHECK(!render_plot(t, PlotKind::RatioVsOmega).empty());
  CHECK(!render_plot(t, PlotKind::MarginVsOmega).empty());

  std::ostringstream again;
  write_sweep_csv(again, cfg, run_sweep(cfg));
  CHECK(again.str() == out.str());
}

TEST_CASE("sweep exit codes") {
  SweepResult r;
  CHECK(r.exit_code() == 0);
  r.failures = 1;
  CHECK(r.exit_code() == 1);
  r.errors = 1;
  CHECK(r.exit_code() == 2);
  r.failures = 0;
  CHECK(r.exit_code() == 2);
}

TEST_CASE("non-monotone failures do not change the exit code") {
  const SweepConfig cfg = parse_config(R"({"medium": {"example": "example1", "eps_in": 4, "mu_in": 1},
    "R": 2, "omega": [12.2300124], "quadrature": {"n_r": 16, "n_phi": 16, "n_theta": 32}})");
  const SweepResult res = run_sweep(cfg);
  CHECK_FALSE(res.monotone);
  CHECK(res.failures == 0);
  CHECK(res.exit_code() == 0);
  CHECK(res.max_ratio(BoundId::Thm22) > 10.0);
}

TEST_CASE("plot input errors") {
  std::istringstream empty("# only a comment\n");
  const CsvTable e = read_csv(empty);
  CHECK_THROWS_WITH(render_plot(e, PlotKind::RatioVsOmega), "no rows");
  std::istringstream trace("r,original,mollified\n0,0.5,0.5\n0.1,0.5,0.5\n");
  const CsvTable t = read_csv(trace);
  CHECK_THROWS_WITH(render_plot(t, PlotKind::RatioVsOmega), "missing column 'omega'");
  CHECK(!render_plot(t, PlotKind::MollifierTrace).empty());
  std::istringstream quoted("a,b\n\"x,y\",2\n");
  const CsvTable q = read_csv(quoted);
  CHECK(q.rows[0][0] == "x,y");
  CHECK_THROWS(plot_kind_from_string("histogram"));
}

TEST_CASE("suite selector validation") {
  CHECK_THROWS_AS(run_suites("everything"), std::invalid_argument);
  const auto rows = run_suites("sharpness");
  CHECK(!rows.empty());
  std::ostringstream out;
  write_suite_csv(out, rows);
  CHECK(lines_of(out.str()).front() == "id,value,tolerance,status");
  for (const auto& r : rows) CHECK(r.pass);
}
