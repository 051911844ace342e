// SPDX-License-Identifier: Apache-2.0
#include "maxstab/plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

namespace maxstab {

std::size_t CsvTable::column(const std::string& name) const {
  const auto it = std::find(header.begin(), header.end(), name);
  if (it == header.end()) throw std::runtime_error("missing column '" + name + "'");
  return static_cast<std::size_t>(it - header.begin());
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        cur += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        cur += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else if (c != '\r') {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

bool parse_number(const std::string& s, double& v) {
  if (s.empty()) return false;
  char* end = nullptr;
  v = std::strtod(s.c_str(), &end);
  return end && *end == '\0' && std::isfinite(v);
}

struct Series {
  std::string label;
  std::vector<std::pair<double, double>> pts;
};

struct Axes {
  std::string title, xlabel, ylabel;
  bool logx = false, logy = false;
  std::vector<Series> series;
  std::vector<std::pair<double, std::string>> hlines;
};

const char* kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string tick_label(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '<')
      out += "&lt;";
    else if (c == '>')
      out += "&gt;";
    else if (c == '&')
      out += "&amp;";
    else
      out += c;
  }
  return out;
}

std::vector<double> ticks(double lo, double hi, bool log) {
  std::vector<double> t;
  if (log) {
    for (double e = std::floor(lo); e <= std::ceil(hi) + 1e-9; e += 1.0)
      if (e >= lo - 1e-9 && e <= hi + 1e-9) t.push_back(e);
    if (t.size() < 2) t = {lo, hi};
    return t;
  }
  const double span = hi - lo;
  const double raw = span / 6.0;
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  double step = mag;
  for (double m : {1.0, 2.0, 5.0, 10.0})
    if (m * mag >= raw) {
      step = m * mag;
      break;
    }
  for (double v = std::ceil(lo / step) * step; v <= hi + 1e-9 * span; v += step) t.push_back(std::abs(v) < 1e-12 * span ? 0.0 : v);
  return t;
}

std::string render(const Axes& ax) {
  const double W = 800, H = 500, L = 80, Rm = 170, T = 40, B = 60;
  auto tx = [&](double v, bool log) { return log ? std::log10(v) : v; };
  double x0 = 1e300, x1 = -1e300, y0 = 1e300, y1 = -1e300;
  for (const auto& s : ax.series)
    for (const auto& [x, y] : s.pts) {
      x0 = std::min(x0, tx(x, ax.logx));
      x1 = std::max(x1, tx(x, ax.logx));
      y0 = std::min(y0, tx(y, ax.logy));
      y1 = std::max(y1, tx(y, ax.logy));
    }
  for (const auto& [y, label] : ax.hlines) {
    (void)label;
    y0 = std::min(y0, tx(y, ax.logy));
    y1 = std::max(y1, tx(y, ax.logy));
  }
  if (x1 - x0 < 1e-12) {
    x0 -= 0.5;
    x1 += 0.5;
  }
  if (y1 - y0 < 1e-12) {
    y0 -= 0.5;
    y1 += 0.5;
  }
  const double pad = 0.05 * (y1 - y0);
  y0 -= pad;
  y1 += pad;
  auto px = [&](double v) { return L + (W - L - Rm) * (v - x0) / (x1 - x0); };
  auto py = [&](double v) { return H - B - (H - T - B) * (v - y0) / (y1 - y0); };

  std::ostringstream o;
  o << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  o << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H << "\" viewBox=\"0 0 " << W
    << ' ' << H << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  o << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  o << "<text x=\"" << num(W / 2) << "\" y=\"22\" text-anchor=\"middle\" font-size=\"15\">" << escape(ax.title)
    << "</text>\n";
  o << "<rect x=\"" << num(L) << "\" y=\"" << num(T) << "\" width=\"" << num(W - L - Rm) << "\" height=\""
    << num(H - T - B) << "\" fill=\"none\" stroke=\"black\"/>\n";
  for (double t : ticks(x0, x1, ax.logx)) {
    const double X = px(t);
    o << "<line x1=\"" << num(X) << "\" y1=\"" << num(H - B) << "\" x2=\"" << num(X) << "\" y2=\"" << num(H - B + 5)
      << "\" stroke=\"black\"/>\n";
    o << "<text x=\"" << num(X) << "\" y=\"" << num(H - B + 18) << "\" text-anchor=\"middle\">"
      << tick_label(ax.logx ? std::pow(10.0, t) : t) << "</text>\n";
  }
  for (double t : ticks(y0, y1, ax.logy)) {
    const double Y = py(t);
    o << "<line x1=\"" << num(L - 5) << "\" y1=\"" << num(Y) << "\" x2=\"" << num(L) << "\" y2=\"" << num(Y)
      << "\" stroke=\"black\"/>\n";
    o << "<text x=\"" << num(L - 8) << "\" y=\"" << num(Y + 4) << "\" text-anchor=\"end\">"
      << tick_label(ax.logy ? std::pow(10.0, t) : t) << "</text>\n";
  }
  o << "<text x=\"" << num(L + (W - L - Rm) / 2) << "\" y=\"" << num(H - 18) << "\" text-anchor=\"middle\">"
    << escape(ax.xlabel) << (ax.logx ? " (log)" : "") << "</text>\n";
  o << "<text transform=\"translate(18," << num(T + (H - T - B) / 2) << ") rotate(-90)\" text-anchor=\"middle\">"
    << escape(ax.ylabel) << (ax.logy ? " (log)" : "") << "</text>\n";

  double ly = T + 10;
  for (const auto& [y, label] : ax.hlines) {
    const double Y = py(tx(y, ax.logy));
    o << "<line x1=\"" << num(L) << "\" y1=\"" << num(Y) << "\" x2=\"" << num(W - Rm) << "\" y2=\"" << num(Y)
      << "\" stroke=\"gray\" stroke-dasharray=\"6,4\"/>\n";
    o << "<text x=\"" << num(W - Rm + 8) << "\" y=\"" << num(Y + 4) << "\" fill=\"gray\">" << escape(label)
      << "</text>\n";
  }
  for (std::size_t i = 0; i < ax.series.size(); ++i) {
    const Series& s = ax.series[i];
    const char* color = kColors[i % (sizeof kColors / sizeof *kColors)];
    o << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
    for (std::size_t k = 0; k < s.pts.size(); ++k)
      o << (k ? " " : "") << num(px(tx(s.pts[k].first, ax.logx))) << ',' << num(py(tx(s.pts[k].second, ax.logy)));
    o << "\"/>\n";
    for (const auto& [x, y] : s.pts)
      o << "<circle cx=\"" << num(px(tx(x, ax.logx))) << "\" cy=\"" << num(py(tx(y, ax.logy)))
        << "\" r=\"2.5\" fill=\"" << color << "\"/>\n";
    ly += 18;
    o << "<line x1=\"" << num(W - Rm + 8) << "\" y1=\"" << num(ly + 40) << "\" x2=\"" << num(W - Rm + 28)
      << "\" y2=\"" << num(ly + 40) << "\" stroke=\"" << color << "\" stroke-width=\"2\"/>\n";
    o << "<text x=\"" << num(W - Rm + 34) << "\" y=\"" << num(ly + 44) << "\">" << escape(s.label) << "</text>\n";
  }
  o << "</svg>\n";
  return o.str();
}

void sort_series(std::vector<Series>& ss) {
  for (auto& s : ss) std::stable_sort(s.pts.begin(), s.pts.end());
}

std::vector<Series> by_bound(const CsvTable& t, bool ratio) {
  const std::size_t iw = t.column("omega"), ib = t.column("bound_id");
  const std::size_t il = ratio ? t.column("lhs") : 0, ir = ratio ? t.column("rhs") : 0;
  const std::size_t im = ratio ? 0 : t.column("margin");
  std::map<std::string, Series> groups;
  std::vector<std::string> order;
  for (const auto& row : t.rows) {
    const std::size_t need = std::max({iw, ib, il, ir, im});
    if (row.size() <= need) continue;
    double w, y;
    if (!parse_number(row[iw], w) || !(w > 0.0)) continue;
    if (ratio) {
      double l, r;
      if (!parse_number(row[il], l) || !parse_number(row[ir], r) || !(r > 0.0) || !(l > 0.0)) continue;
      y = l / r;
    } else if (!parse_number(row[im], y)) {
      continue;
    }
    if (!groups.count(row[ib])) order.push_back(row[ib]);
    auto& g = groups[row[ib]];
    g.label = row[ib];
    g.pts.emplace_back(w, y);
  }
  std::vector<Series> out;
  for (const auto& k : order) out.push_back(groups[k]);
  sort_series(out);
  return out;
}

}  // namespace

CsvTable read_csv(std::istream& in) {
  CsvTable t;
  std::string line;
  bool have_header = false;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    if (!have_header) {
      t.header = split_csv_line(line);
      have_header = true;
    } else {
      t.rows.push_back(split_csv_line(line));
    }
  }
  return t;
}

PlotKind plot_kind_from_string(const std::string& s) {
  if (s == "ratio_vs_omega") return PlotKind::RatioVsOmega;
  if (s == "margin_vs_omega") return PlotKind::MarginVsOmega;
  if (s == "mollifier_trace") return PlotKind::MollifierTrace;
  throw std::invalid_argument("unknown plot kind '" + s + "' (expected ratio_vs_omega, margin_vs_omega or mollifier_trace)");
}

std::string render_plot(const CsvTable& table, PlotKind kind) {
  if (table.rows.empty()) throw std::runtime_error("no rows");
  Axes ax;
  switch (kind) {
    case PlotKind::RatioVsOmega:
      ax.title = "lhs / rhs against frequency";
      ax.xlabel = "omega";
      ax.ylabel = "lhs / rhs";
      ax.logx = ax.logy = true;
      ax.series = by_bound(table, true);
      ax.hlines = {{1.0, "bound (ratio 1)"}};
      break;
    case PlotKind::MarginVsOmega:
      ax.title = "margin rhs - lhs against frequency";
      ax.xlabel = "omega";
      ax.ylabel = "margin";
      ax.logx = true;
      ax.series = by_bound(table, false);
      ax.hlines = {{0.0, "zero margin"}};
      break;
    case PlotKind::MollifierTrace: {
      const std::size_t ir = table.column("r"), io = table.column("original"), im = table.column("mollified");
      Series a{"original", {}}, b{"mollified", {}};
      for (const auto& row : table.rows) {
        if (row.size() <= std::max({ir, io, im})) continue;
        double r, vo, vm;
        if (!parse_number(row[ir], r) || !parse_number(row[io], vo) || !parse_number(row[im], vm)) continue;
        a.pts.emplace_back(r, vo);
        b.pts.emplace_back(r, vm);
      }
      ax.title = "smallest eigenvalue along a ray";
      ax.xlabel = "r";
      ax.ylabel = "eigenvalue";
      ax.series = {a, b};
      sort_series(ax.series);
      break;
    }
  }
  bool any = false;
  for (const auto& s : ax.series) any = any || !s.pts.empty();
  if (!any) throw std::runtime_error("no rows");
  return render(ax);
}

void emit_plot(const std::string& csv_path, PlotKind kind, const std::string& svg_path) {
  std::ifstream in(csv_path);
  if (!in) throw std::runtime_error("cannot open '" + csv_path + "'");
  const std::string svg = render_plot(read_csv(in), kind);
  std::ofstream out(svg_path);
  if (!out) throw std::runtime_error("cannot write '" + svg_path + "'");
  out << svg;
}

}  // namespace maxstab
