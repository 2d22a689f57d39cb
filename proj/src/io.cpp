#include "twpa/io.hpp"

#include <algorithm>
#include <cmath>
#include <fmt/format.h>
#include <fstream>
#include <limits>
#include <sstream>

#include "twpa/errors.hpp"

namespace twpa {

namespace {

constexpr double nan = std::numeric_limits<double>::quiet_NaN();

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, sep)) out.push_back(field);
  if (!line.empty() && line.back() == sep) out.emplace_back();
  return out;
}

std::string escape(const std::string& text) {
  std::string out;
  for (char c : text) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      default: out += c;
    }
  }
  return out;
}

struct Range {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();

  void add(double v) {
    if (!std::isfinite(v)) return;
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  void settle() {
    if (!(lo <= hi)) lo = 0.0, hi = 1.0;
    if (lo == hi) lo -= 0.5, hi += 0.5;
  }
};

constexpr double width = 640.0;
constexpr double height = 400.0;
constexpr double margin = 56.0;

std::string svg_open(const std::string& title) {
  return fmt::format(
      "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{0:g}\" height=\"{1:g}\" viewBox=\"0 0 {0:g} {1:g}\">\n"
      "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
      "<text x=\"{2:g}\" y=\"24\" font-family=\"sans-serif\" font-size=\"14\" text-anchor=\"middle\">{3}</text>\n",
      width, height, width / 2.0, escape(title));
}

std::string svg_axes(const std::string& x_label, const std::string& y_label, const Range& x, const Range& y) {
  const double x0 = margin;
  const double y0 = height - margin;
  std::string out = fmt::format(
      "<g stroke=\"black\" fill=\"none\"><line x1=\"{0:g}\" y1=\"{1:g}\" x2=\"{2:g}\" y2=\"{1:g}\"/>"
      "<line x1=\"{0:g}\" y1=\"{1:g}\" x2=\"{0:g}\" y2=\"{3:g}\"/></g>\n",
      x0, y0, width - margin, margin);
  out += fmt::format(
      "<g font-family=\"sans-serif\" font-size=\"11\">"
      "<text x=\"{:g}\" y=\"{:g}\" text-anchor=\"middle\">{}</text>"
      "<text x=\"14\" y=\"{:g}\" transform=\"rotate(-90 14 {:g})\" text-anchor=\"middle\">{}</text>"
      "<text x=\"{:g}\" y=\"{:g}\">{:.4g}</text><text x=\"{:g}\" y=\"{:g}\" text-anchor=\"end\">{:.4g}</text>"
      "<text x=\"{:g}\" y=\"{:g}\" text-anchor=\"end\">{:.4g}</text><text x=\"{:g}\" y=\"{:g}\" text-anchor=\"end\">{:.4g}</text>"
      "</g>\n",
      width / 2.0, height - 12.0, escape(x_label), height / 2.0, height / 2.0, escape(y_label), x0, y0 + 16.0, x.lo,
      width - margin, y0 + 16.0, x.hi, x0 - 4.0, y0, y.lo, x0 - 4.0, margin + 4.0, y.hi);
  return out;
}

std::string svg_close(const Table& data) { return "<!-- data\n" + to_csv(data) + "-->\n</svg>\n"; }

}  // namespace

std::size_t Table::column(const std::string& name) const {
  const auto it = std::find(header.begin(), header.end(), name);
  if (it == header.end()) throw ConfigError(fmt::format("table has no column '{}'", name));
  return static_cast<std::size_t>(it - header.begin());
}

std::string format_value(double value) {
  if (std::isnan(value)) return "nan";
  return fmt::format("{:.12e}", value);
}

std::string to_csv(const Table& table) {
  std::string out = fmt::format("{}\n", fmt::join(table.header, ","));
  for (const auto& row : table.rows) {
    for (std::size_t j = 0; j < row.size(); ++j) {
      if (j > 0) out += ',';
      out += format_value(row[j]);
    }
    out += '\n';
  }
  return out;
}

Table parse_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  Table table;
  if (!std::getline(in, line) || line.empty()) throw ConfigError("CSV document has no header");
  table.header = split(line, ',');
  std::size_t number = 1;
  while (std::getline(in, line)) {
    ++number;
    if (line.empty()) continue;
    const std::vector<std::string> fields = split(line, ',');
    if (fields.size() != table.header.size()) {
      throw ConfigError(fmt::format("CSV line {} has {} fields, expected {}", number, fields.size(),
                                    table.header.size()));
    }
    std::vector<double> row;
    for (const std::string& f : fields) {
      if (f == "nan") {
        row.push_back(nan);
        continue;
      }
      std::size_t used = 0;
      double v = 0.0;
      try {
        v = std::stod(f, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used != f.size() || f.empty()) throw ConfigError(fmt::format("CSV line {}: '{}' is not a number", number, f));
      row.push_back(v);
    }
    table.rows.push_back(std::move(row));
  }
  return table;
}

nlohmann::ordered_json to_json(const Table& table) {
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (const auto& row : table.rows) {
    nlohmann::ordered_json obj = nlohmann::ordered_json::object();
    for (std::size_t j = 0; j < row.size(); ++j) {
      if (std::isnan(row[j])) {
        obj[table.header[j]] = nullptr;
      } else {
        obj[table.header[j]] = row[j];
      }
    }
    rows.push_back(std::move(obj));
  }
  return rows;
}

Table gain_table(const SweepTable& sweep) {
  Table t{{"omega_s_hz", "gain_nopm_db", "gain_pm_db"}, {}};
  for (const GainRow& r : sweep.rows) t.rows.push_back({r.frequency_hz, r.gain_nopm_db, r.gain_pm_db});
  return t;
}

Table comparison_table(const ComparisonTable& comparison) {
  Table t{{"omega_s_hz", "gain_classical_db", "gain_classicalised_db", "delta_db"}, {}};
  for (const ComparisonRow& r : comparison.rows) {
    t.rows.push_back({r.frequency_hz, r.gain_classical_db, r.gain_classicalised_db, r.delta_db});
  }
  return t;
}

Table distribution_table(const std::vector<double>& probabilities) {
  Table t{{"N", "probability"}, {}};
  for (std::size_t n = 0; n < probabilities.size(); ++n) t.rows.push_back({static_cast<double>(n), probabilities[n]});
  return t;
}

Table heatmap_table(const std::vector<HeatmapRow>& rows) {
  Table t{{"kappa", "gain_db", "N", "probability"}, {}};
  for (const HeatmapRow& r : rows) {
    for (std::size_t n = 0; n < r.probabilities.size(); ++n) {
      t.rows.push_back({r.kappa, r.gain_db, static_cast<double>(n), r.probabilities[n]});
    }
  }
  return t;
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw ConfigError(fmt::format("cannot open '{}' for writing", path.string()));
  out << content;
  if (!out) throw ConfigError(fmt::format("failed writing '{}'", path.string()));
}

std::string svg_line_plot(const std::string& title, const std::string& x_label, const std::string& y_label,
                          const std::vector<PlotSeries>& series, const Table& data) {
  Range x;
  Range y;
  for (const PlotSeries& s : series) {
    for (double v : s.x) x.add(v);
    for (double v : s.y) y.add(v);
  }
  x.settle();
  y.settle();
  auto px = [&](double v) { return margin + (v - x.lo) / (x.hi - x.lo) * (width - 2.0 * margin); };
  auto py = [&](double v) { return height - margin - (v - y.lo) / (y.hi - y.lo) * (height - 2.0 * margin); };

  static const char* colours[] = {"#1f5fbf", "#c0392b", "#2e8b57", "#8e44ad"};
  std::string out = svg_open(title) + svg_axes(x_label, y_label, x, y);
  for (std::size_t j = 0; j < series.size(); ++j) {
    const PlotSeries& s = series[j];
    const char* colour = colours[j % 4];
    std::string points;
    auto flush = [&] {
      if (!points.empty()) {
        out += fmt::format("<polyline fill=\"none\" stroke=\"{}\" stroke-width=\"1.5\" points=\"{}\"/>\n", colour,
                           points);
      }
      points.clear();
    };
    for (std::size_t i = 0; i < std::min(s.x.size(), s.y.size()); ++i) {
      if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) {
        flush();
        continue;
      }
      if (!points.empty()) points += ' ';
      points += fmt::format("{:.2f},{:.2f}", px(s.x[i]), py(s.y[i]));
    }
    flush();
    out += fmt::format(
        "<text x=\"{:g}\" y=\"{:g}\" font-family=\"sans-serif\" font-size=\"11\" fill=\"{}\">{}</text>\n",
        width - margin - 120.0, margin + 14.0 * static_cast<double>(j + 1), colour, escape(s.label));
  }
  return out + svg_close(data);
}

std::string svg_heatmap(const std::string& title, const std::vector<HeatmapRow>& rows, const Table& data) {
  Range x;
  Range y;
  double peak = 0.0;
  for (const HeatmapRow& r : rows) {
    x.add(r.kappa);
    y.add(0.0);
    y.add(static_cast<double>(r.probabilities.empty() ? 0 : r.probabilities.size() - 1));
    for (double p : r.probabilities) peak = std::max(peak, p);
  }
  x.settle();
  y.settle();
  std::string out = svg_open(title) + svg_axes("kappa", "N", x, y);
  if (!rows.empty()) {
    const double cell_w = (width - 2.0 * margin) / static_cast<double>(rows.size());
    for (std::size_t j = 0; j < rows.size(); ++j) {
      const std::vector<double>& p = rows[j].probabilities;
      const double cell_h = (height - 2.0 * margin) / static_cast<double>(std::max<std::size_t>(p.size(), 1));
      for (std::size_t n = 0; n < p.size(); ++n) {
        if (p[n] <= 0.0) continue;
        const int shade = static_cast<int>(std::lround(255.0 * (1.0 - p[n] / peak)));
        out += fmt::format("<rect x=\"{:.2f}\" y=\"{:.2f}\" width=\"{:.2f}\" height=\"{:.2f}\" fill=\"rgb({},{},{})\"/>\n",
                           margin + cell_w * static_cast<double>(j),
                           height - margin - cell_h * static_cast<double>(n + 1), cell_w, cell_h, shade, shade,
                           shade);
      }
    }
  }
  return out + svg_close(data);
}

}  // namespace twpa
