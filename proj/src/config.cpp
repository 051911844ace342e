// SPDX-License-Identifier: Apache-2.0
#include "maxstab/config.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

namespace maxstab {

using nlohmann::json;

std::uint64_t fnv1a64(const std::string& s) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& msg) {
  throw ConfigError("config field '" + path + "': " + msg, path);
}

std::string join(const std::string& base, const std::string& key) { return base.empty() ? key : base + "." + key; }

void allow_keys(const json& obj, const std::string& path, std::initializer_list<const char*> keys) {
  const std::set<std::string> allowed(keys.begin(), keys.end());
  for (const auto& [k, v] : obj.items()) {
    (void)v;
    if (!allowed.count(k)) fail(join(path, k), "unknown key");
  }
}

const json& require_object(const json& j, const std::string& path) {
  if (!j.is_object()) fail(path, "expected an object");
  return j;
}

double number_at(const json& j, const std::string& path) {
  if (!j.is_number()) fail(path, "expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) fail(path, "expected a finite number");
  return v;
}

double positive_at(const json& j, const std::string& path) {
  const double v = number_at(j, path);
  if (!(v > 0.0)) fail(path, "must be positive");
  return v;
}

double get_positive(const json& obj, const std::string& path, const char* key, double fallback) {
  if (!obj.contains(key)) return fallback;
  return positive_at(obj.at(key), join(path, key));
}

int get_count(const json& obj, const std::string& path, const char* key, int fallback, int lo, int hi) {
  if (!obj.contains(key)) return fallback;
  const json& v = obj.at(key);
  const std::string p = join(path, key);
  if (!v.is_number_integer()) fail(p, "expected an integer");
  const long long n = v.get<long long>();
  if (n < lo || n > hi) fail(p, "must lie in [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
  return static_cast<int>(n);
}

bool get_bool(const json& obj, const std::string& path, const char* key, bool fallback) {
  if (!obj.contains(key)) return fallback;
  if (!obj.at(key).is_boolean()) fail(join(path, key), "expected true or false");
  return obj.at(key).get<bool>();
}

Vec3 get_vec3(const json& obj, const std::string& path, const char* key, const Vec3& fallback) {
  if (!obj.contains(key)) return fallback;
  const json& v = obj.at(key);
  const std::string p = join(path, key);
  if (!v.is_array() || v.size() != 3) fail(p, "expected an array of 3 numbers");
  Vec3 out;
  for (int i = 0; i < 3; ++i) out(i) = number_at(v[i], p + "[" + std::to_string(i) + "]");
  return out;
}

void parse_medium(const json& m, SweepConfig& cfg, double eps0, double mu0) {
  const std::string path = "medium";
  require_object(m, path);
  if (m.contains("example")) {
    if (!m.at("example").is_string()) fail("medium.example", "expected a string");
    const std::string name = m.at("example").get<std::string>();
    if (name == "example1") {
      allow_keys(m, path, {"example", "eps_in", "mu_in", "r1"});
      const double eps_in = get_positive(m, path, "eps_in", 0.5 * eps0);
      const double mu_in = get_positive(m, path, "mu_in", mu0);
      const double r1 = get_positive(m, path, "r1", 1.0);
      cfg.medium = example1_medium(eps_in, mu_in, r1, eps0, mu0);
    } else if (name == "example3") {
      allow_keys(m, path, {"example", "layered_mu", "r_outer"});
      const bool layered_mu = get_bool(m, path, "layered_mu", true);
      const double r_outer = get_positive(m, path, "r_outer", 1.0);
      cfg.medium = example3_medium(eps0, mu0, layered_mu, r_outer);
    } else {
      fail("medium.example", "unknown example '" + name + "' (expected example1 or example3)");
    }
    cfg.medium_label = name;
    return;
  }
  allow_keys(m, path, {"layers"});
  if (!m.contains("layers")) fail(path, "expected 'example' or 'layers'");
  const json& layers = m.at("layers");
  if (!layers.is_array()) fail("medium.layers", "expected an array");
  LayeredMedium med;
  med.eps0 = eps0;
  med.mu0 = mu0;
  for (std::size_t i = 0; i < layers.size(); ++i) {
    const std::string p = "medium.layers[" + std::to_string(i) + "]";
    const json& L = require_object(layers[i], p);
    allow_keys(L, p, {"r", "eps", "mu"});
    for (const char* k : {"r", "eps", "mu"})
      if (!L.contains(k)) fail(join(p, k), "missing");
    const double r = positive_at(L.at("r"), p + ".r");
    if (!med.radii.empty() && !(r > med.radii.back())) fail(p + ".r", "radii must be strictly increasing");
    med.radii.push_back(r);
    med.eps.push_back(positive_at(L.at("eps"), p + ".eps"));
    med.mu.push_back(positive_at(L.at("mu"), p + ".mu"));
  }
  cfg.medium = med;
  cfg.medium_label = "layers";
}

std::vector<double> parse_omegas(const json& w) {
  const std::string path = "omega";
  std::vector<double> out;
  if (w.is_array()) {
    if (w.empty()) fail(path, "list is empty");
    for (std::size_t i = 0; i < w.size(); ++i) out.push_back(positive_at(w[i], path + "[" + std::to_string(i) + "]"));
    return out;
  }
  require_object(w, path);
  allow_keys(w, path, {"log_range", "count"});
  if (!w.contains("log_range")) fail(path, "expected a list or {log_range, count}");
  const json& lr = w.at("log_range");
  if (!lr.is_array() || lr.size() != 2) fail("omega.log_range", "expected [low, high]");
  const double a = positive_at(lr[0], "omega.log_range[0]");
  const double b = positive_at(lr[1], "omega.log_range[1]");
  if (!(b >= a)) fail("omega.log_range", "high must not be below low");
  const int n = get_count(w, path, "count", 8, 1, 100000);
  if (n == 1) return {a};
  const double la = std::log(a), lb = std::log(b);
  for (int i = 0; i < n; ++i) out.push_back(i == 0 ? a : i == n - 1 ? b : std::exp(la + (lb - la) * i / (n - 1)));
  return out;
}

json canonical_json(const SweepConfig& c) {
  json j;
  j["medium"]["label"] = c.medium_label;
  j["medium"]["radii"] = c.medium.radii;
  j["medium"]["eps"] = c.medium.eps;
  j["medium"]["mu"] = c.medium.mu;
  j["eps0"] = c.medium.eps0;
  j["mu0"] = c.medium.mu0;
  j["R"] = c.R;
  j["R_scat"] = c.R_scat;
  j["incidence"]["d"] = {c.d(0), c.d(1), c.d(2)};
  j["incidence"]["A"] = {c.A(0), c.A(1), c.A(2)};
  j["omega"] = c.omegas;
  j["refine"] = {{"enabled", c.refine.enabled},
                 {"min_omega", c.refine.min_omega},
                 {"max_omega", c.refine.max_omega},
                 {"scan_step", c.refine.scan_step},
                 {"peaks", c.refine.peaks}};
  json b = json::array();
  for (BoundId id : c.bounds) b.push_back(to_string(id));
  j["bounds"] = b;
  j["quadrature"] = {{"n_r", c.quadrature.n_r}, {"n_phi", c.quadrature.n_phi}, {"n_theta", c.quadrature.n_theta}};
  j["seed"] = c.seed;
  return j;
}

void line_column(const std::string& text, std::size_t byte, int& line, int& col) {
  line = 1;
  col = 1;
  const std::size_t end = std::min(byte > 0 ? byte - 1 : 0, text.size());
  for (std::size_t i = 0; i < end; ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
}

}  // namespace

SweepConfig parse_config(const std::string& text) {
  json root;
  try {
    root = json::parse(text, nullptr, true, /*ignore_comments=*/true);
  } catch (const json::parse_error& e) {
    int line = 0, col = 0;
    line_column(text, e.byte, line, col);
    std::ostringstream os;
    os << "config syntax error at line " << line << ", column " << col << ": " << e.what();
    throw ConfigError(os.str(), "", line, col);
  }
  require_object(root, "<root>");
  allow_keys(root, "", {"medium", "eps0", "mu0", "R", "R_scat", "incidence", "omega", "refine", "bounds",
                        "quadrature", "output", "seed"});

  SweepConfig cfg;
  const double eps0 = get_positive(root, "", "eps0", 1.0);
  const double mu0 = get_positive(root, "", "mu0", 1.0);
  if (!root.contains("medium")) fail("medium", "missing");
  parse_medium(root.at("medium"), cfg, eps0, mu0);
  try {
    cfg.medium.validate();
  } catch (const std::exception& e) {
    fail("medium", e.what());
  }

  const double outer = cfg.medium.outer_radius();
  cfg.R_scat = get_positive(root, "", "R_scat", outer > 0.0 ? outer : 1.0);
  if (cfg.R_scat < outer * (1.0 - 1e-12)) fail("R_scat", "must contain the scatterer (outer radius " + std::to_string(outer) + ")");
  if (!root.contains("R")) fail("R", "missing");
  cfg.R = positive_at(root.at("R"), "R");
  if (!(cfg.R > cfg.R_scat)) fail("R", "must exceed R_scat");

  if (root.contains("incidence")) {
    const json& inc = require_object(root.at("incidence"), "incidence");
    allow_keys(inc, "incidence", {"d", "A"});
    cfg.d = get_vec3(inc, "incidence", "d", cfg.d);
    cfg.A = get_vec3(inc, "incidence", "A", cfg.A);
  }
  if (!(cfg.d.norm() > 0.0)) fail("incidence.d", "must be nonzero");
  if (!(cfg.A.norm() > 0.0)) fail("incidence.A", "must be nonzero");
  cfg.d.normalize();
  cfg.A.normalize();
  if (std::abs(cfg.A.dot(cfg.d)) > 1e-12) fail("incidence.A", "must be orthogonal to d");

  if (!root.contains("omega")) fail("omega", "missing");
  cfg.omegas = parse_omegas(root.at("omega"));

  if (root.contains("refine")) {
    const json& r = require_object(root.at("refine"), "refine");
    allow_keys(r, "refine", {"enabled", "min_omega", "max_omega", "scan_step", "peaks"});
    cfg.refine.enabled = get_bool(r, "refine", "enabled", true);
    cfg.refine.min_omega = get_positive(r, "refine", "min_omega", cfg.refine.min_omega);
    cfg.refine.max_omega = get_positive(r, "refine", "max_omega", cfg.refine.max_omega);
    cfg.refine.scan_step = get_positive(r, "refine", "scan_step", cfg.refine.scan_step);
    cfg.refine.peaks = get_count(r, "refine", "peaks", cfg.refine.peaks, 1, 1000);
    if (!(cfg.refine.max_omega > cfg.refine.min_omega)) fail("refine.max_omega", "must exceed refine.min_omega");
  }

  if (root.contains("bounds")) {
    const json& b = root.at("bounds");
    if (!b.is_array() || b.empty()) fail("bounds", "expected a non-empty list");
    cfg.bounds.clear();
    for (std::size_t i = 0; i < b.size(); ++i) {
      const std::string p = "bounds[" + std::to_string(i) + "]";
      if (!b[i].is_string()) fail(p, "expected a string");
      const std::string name = b[i].get<std::string>();
      BoundId id;
      try {
        id = bound_id_from_string(name);
      } catch (const std::exception&) {
        fail(p, "unknown bound '" + name + "'");
      }
      if (id != BoundId::Thm22 && id != BoundId::Scat) fail(p, "sweeps support thm22 and scat only");
      cfg.bounds.push_back(id);
    }
  }

  if (root.contains("quadrature")) {
    const json& q = require_object(root.at("quadrature"), "quadrature");
    allow_keys(q, "quadrature", {"n_r", "n_phi", "n_theta"});
    cfg.quadrature.n_r = get_count(q, "quadrature", "n_r", cfg.quadrature.n_r, 2, 512);
    cfg.quadrature.n_phi = get_count(q, "quadrature", "n_phi", cfg.quadrature.n_phi, 2, 512);
    cfg.quadrature.n_theta = get_count(q, "quadrature", "n_theta", cfg.quadrature.n_theta, 2, 1024);
  }

  if (root.contains("output")) {
    const json& o = require_object(root.at("output"), "output");
    allow_keys(o, "output", {"csv"});
    if (o.contains("csv")) {
      if (!o.at("csv").is_string()) fail("output.csv", "expected a string");
      cfg.csv_path = o.at("csv").get<std::string>();
    }
  }

  if (root.contains("seed")) {
    const json& s = root.at("seed");
    if (!s.is_number_unsigned() || s.get<unsigned long long>() > 0xffffffffull)
      fail("seed", "expected a non-negative 32-bit integer");
    cfg.seed = static_cast<unsigned>(s.get<unsigned long long>());
  }

  cfg.canonical = canonical_json(cfg).dump();
  cfg.hash = fnv1a64(cfg.canonical);
  return cfg;
}

SweepConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open config file '" + path + "'", "");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

}  // namespace maxstab
