#include "mtd/plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <set>

#include "mtd/csv.hpp"
#include "mtd/errors.hpp"

namespace mtd::harness {

namespace {

constexpr double kWidth = 820.0;
constexpr double kHeight = 500.0;
constexpr double kLeft = 70.0;
constexpr double kRight = 220.0;  // legend column
constexpr double kTop = 40.0;
constexpr double kBottom = 60.0;

constexpr const char* kPalette[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728",
                                    "#9467bd", "#8c564b", "#e377c2", "#7f7f7f"};

std::string escape_xml(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::optional<double> metric_value(const AggregateRow& r, Metric m) {
  return m == Metric::Ettd ? r.ettd : r.mttd;
}

}  // namespace

Metric parse_metric(std::string_view text) {
  if (text == "ettd") return Metric::Ettd;
  if (text == "mttd") return Metric::Mttd;
  throw ConfigError("metric must be ettd or mttd, got '" + std::string(text) + "'");
}

const char* to_string(Metric m) noexcept {
  return m == Metric::Ettd ? "ettd" : "mttd";
}

std::string render_svg(std::span<const AggregateRow> rows, Metric metric) {
  if (rows.empty()) throw DomainError("render_svg: no rows");

  // Algorithms keep first-appearance order; points are sorted by x.
  std::vector<std::string> order;
  std::map<std::string, std::vector<std::pair<int, double>>> series;
  std::set<int> xs;
  double y_max = 0.0;
  for (const auto& r : rows) {
    if (!series.count(r.algorithm)) order.push_back(r.algorithm);
    auto& points = series[r.algorithm];
    xs.insert(r.n_common);
    if (const auto y = metric_value(r, metric)) {
      points.emplace_back(r.n_common, *y);
      y_max = std::max(y_max, *y);
    }
  }
  for (auto& [name, points] : series) std::sort(points.begin(), points.end());
  if (y_max <= 0.0) y_max = 1.0;
  y_max *= 1.1;

  const int x_lo = *xs.begin();
  const int x_hi = *xs.rbegin();
  const bool log_x = x_lo > 0 && x_hi >= 8 * x_lo;
  const double plot_w = kWidth - kLeft - kRight;
  const double plot_h = kHeight - kTop - kBottom;
  auto px = [&](int x) {
    if (x_lo == x_hi) return kLeft + plot_w / 2.0;
    const double f = log_x ? (std::log2(x) - std::log2(x_lo)) / (std::log2(x_hi) - std::log2(x_lo))
                           : static_cast<double>(x - x_lo) / (x_hi - x_lo);
    return kLeft + f * plot_w;
  };
  auto py = [&](double y) { return kTop + plot_h * (1.0 - y / y_max); };

  std::string svg;
  svg += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(kWidth) + "\" height=\"" +
         num(kHeight) + "\" viewBox=\"0 0 " + num(kWidth) + " " + num(kHeight) + "\">\n";
  svg += "<rect x=\"0\" y=\"0\" width=\"" + num(kWidth) + "\" height=\"" + num(kHeight) +
         "\" fill=\"white\"/>\n";
  const std::string title = metric == Metric::Ettd ? "ETTD" : "MTTD";
  svg += "<text x=\"" + num(kLeft + plot_w / 2) + "\" y=\"24\" text-anchor=\"middle\" "
         "font-family=\"sans-serif\" font-size=\"16\">" + title + " vs number of common channels</text>\n";

  // Axes and ticks.
  svg += "<g stroke=\"black\" stroke-width=\"1\">\n";
  svg += "<line x1=\"" + num(kLeft) + "\" y1=\"" + num(kTop + plot_h) + "\" x2=\"" +
         num(kLeft + plot_w) + "\" y2=\"" + num(kTop + plot_h) + "\"/>\n";
  svg += "<line x1=\"" + num(kLeft) + "\" y1=\"" + num(kTop) + "\" x2=\"" + num(kLeft) +
         "\" y2=\"" + num(kTop + plot_h) + "\"/>\n";
  svg += "</g>\n";
  svg += "<g font-family=\"sans-serif\" font-size=\"11\">\n";
  for (int x : xs) {
    svg += "<text x=\"" + num(px(x)) + "\" y=\"" + num(kTop + plot_h + 16) +
           "\" text-anchor=\"middle\">" + std::to_string(x) + "</text>\n";
  }
  for (int i = 0; i <= 5; ++i) {
    const double y = y_max * i / 5.0;
    svg += "<text x=\"" + num(kLeft - 6) + "\" y=\"" + num(py(y) + 4) +
           "\" text-anchor=\"end\">" + num(y) + "</text>\n";
  }
  svg += "<text x=\"" + num(kLeft + plot_w / 2) + "\" y=\"" + num(kHeight - 16) +
         "\" text-anchor=\"middle\">n_common</text>\n";
  svg += "<text x=\"16\" y=\"" + num(kTop + plot_h / 2) + "\" text-anchor=\"middle\" "
         "transform=\"rotate(-90 16 " + num(kTop + plot_h / 2) + ")\">" + title + " (slots)</text>\n";
  svg += "</g>\n";

  for (std::size_t i = 0; i < order.size(); ++i) {
    const auto& name = order[i];
    const auto& points = series[name];
    const std::string color = kPalette[i % std::size(kPalette)];
    svg += "<g class=\"series\" data-algorithm=\"" + escape_xml(name) + "\">\n";
    if (points.size() > 1) {
      svg += "<polyline fill=\"none\" stroke=\"" + color + "\" stroke-width=\"2\" points=\"";
      for (std::size_t k = 0; k < points.size(); ++k) {
        if (k) svg += ' ';
        svg += num(px(points[k].first)) + "," + num(py(points[k].second));
      }
      svg += "\"/>\n";
    }
    for (const auto& [x, y] : points) {
      svg += "<circle cx=\"" + num(px(x)) + "\" cy=\"" + num(py(y)) + "\" r=\"3\" fill=\"" +
             color + "\"/>\n";
    }
    svg += "</g>\n";

    const double ly = kTop + 14.0 + 20.0 * static_cast<double>(i);
    const double lx = kWidth - kRight + 16.0;
    svg += "<line x1=\"" + num(lx) + "\" y1=\"" + num(ly) + "\" x2=\"" + num(lx + 24) +
           "\" y2=\"" + num(ly) + "\" stroke=\"" + color + "\" stroke-width=\"2\"/>\n";
    svg += "<text x=\"" + num(lx + 30) + "\" y=\"" + num(ly + 4) +
           "\" font-family=\"sans-serif\" font-size=\"12\">" + escape_xml(name) + "</text>\n";
  }
  svg += "</svg>\n";
  return svg;
}

void emit_plot(std::span<const AggregateRow> rows, Metric metric,
               const std::filesystem::path& path) {
  write_text_file(path, render_svg(rows, metric));
}

}  // namespace mtd::harness
