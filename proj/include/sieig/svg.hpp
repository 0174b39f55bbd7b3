#pragma once

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

namespace sieig {

struct SvgSeries {
  std::string label;
  std::vector<std::pair<double, double>> points;  // (x, y)
};

struct SvgChartOptions {
  std::string title;
  std::string x_label;
  std::string y_label;
  bool log_x = false;  // y axis is always log10
};

/// Self-contained SVG line chart with a log10 y axis. Points with y <= 0
/// (or x <= 0 under a log x axis) are dropped, since they have no log image.
std::string render_line_chart(const std::vector<SvgSeries>& series,
                              const SvgChartOptions& options);

void write_line_chart(const std::filesystem::path& path,
                      const std::vector<SvgSeries>& series,
                      const SvgChartOptions& options);

}  // namespace sieig
