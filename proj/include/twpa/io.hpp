#pragma once

// Tabular output shared by the command-line tool and the tests: CSV with
// %.12e numbers and LF line endings, a JSON mirror, and a minimal SVG renderer.

#include <cstddef>
#include <filesystem>
#include <string>
#include <vector>

#include "json.hpp"

#include "twpa/classical_cme.hpp"
#include "twpa/correspondence.hpp"
#include "twpa/quantum.hpp"

namespace twpa {

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;

  std::size_t column(const std::string& name) const;
};

std::string format_value(double value);
std::string to_csv(const Table& table);
/// Inverse of to_csv; throws ConfigError on a malformed document.
Table parse_csv(const std::string& text);
nlohmann::ordered_json to_json(const Table& table);

Table gain_table(const SweepTable& sweep);
Table comparison_table(const ComparisonTable& comparison);
Table distribution_table(const std::vector<double>& probabilities);
/// Long format, one line per (kappa, N).
Table heatmap_table(const std::vector<HeatmapRow>& rows);

/// Writes bytes unchanged, creating parent directories.
void write_file(const std::filesystem::path& path, const std::string& content);

struct PlotSeries {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
};

/// Polylines on shared axes; NaN points break the line.  The table is embedded
/// as CSV inside an XML comment.
std::string svg_line_plot(const std::string& title, const std::string& x_label, const std::string& y_label,
                          const std::vector<PlotSeries>& series, const Table& data);

/// Grey-scale cells, one column per heatmap row and one cell per photon number.
std::string svg_heatmap(const std::string& title, const std::vector<HeatmapRow>& rows, const Table& data);

}  // namespace twpa
