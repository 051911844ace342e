// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <istream>
#include <string>
#include <vector>

namespace maxstab {

// A CSV table with '#' comment lines removed.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  // Throws std::runtime_error("missing column 'name'") when absent.
  std::size_t column(const std::string& name) const;
};

CsvTable read_csv(std::istream& in);

enum class PlotKind { RatioVsOmega, MarginVsOmega, MollifierTrace };

PlotKind plot_kind_from_string(const std::string& s);

// Self-contained SVG document. Throws std::runtime_error("no rows") for an
// empty table or when no row carries plottable values.
std::string render_plot(const CsvTable& table, PlotKind kind);

void emit_plot(const std::string& csv_path, PlotKind kind, const std::string& svg_path);

}  // namespace maxstab
