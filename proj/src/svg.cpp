#include "sieig/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "sieig/text_io.hpp"

namespace sieig {

namespace {

constexpr double kWidth = 720.0;
constexpr double kHeight = 480.0;
constexpr double kLeft = 72.0;
constexpr double kRight = 570.0;
constexpr double kTop = 48.0;
constexpr double kBottom = 420.0;

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e",
                          "#9467bd", "#8c564b", "#17becf", "#7f7f7f"};

std::string num(double v) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

std::string tick_label(double v) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      default: out.push_back(c);
    }
  }
  return out;
}

}  // namespace

std::string render_line_chart(const std::vector<SvgSeries>& series,
                              const SvgChartOptions& options) {
  // Transform to plotting space; y is always log10.
  std::vector<std::vector<std::pair<double, double>>> pts(series.size());
  double xmin = 0.0, xmax = 0.0, ymin = 0.0, ymax = 0.0;
  bool any = false;
  for (std::size_t s = 0; s < series.size(); ++s) {
    for (const auto& [x, y] : series[s].points) {
      if (!(y > 0.0)) continue;
      if (options.log_x && !(x > 0.0)) continue;
      const double tx = options.log_x ? std::log10(x) : x;
      const double ty = std::log10(y);
      if (!std::isfinite(tx) || !std::isfinite(ty)) continue;
      if (!any) {
        xmin = xmax = tx;
        ymin = ymax = ty;
        any = true;
      } else {
        xmin = std::min(xmin, tx);
        xmax = std::max(xmax, tx);
        ymin = std::min(ymin, ty);
        ymax = std::max(ymax, ty);
      }
      pts[s].emplace_back(tx, ty);
    }
  }
  if (!any) {
    xmin = ymin = 0.0;
    xmax = ymax = 1.0;
  }
  ymin = std::floor(ymin);
  ymax = std::ceil(ymax);
  if (ymax - ymin < 1.0) ymax = ymin + 1.0;
  if (xmax - xmin <= 0.0) {
    xmin -= 0.5;
    xmax += 0.5;
  }

  const auto sx = [&](double tx) {
    return kLeft + (tx - xmin) / (xmax - xmin) * (kRight - kLeft);
  };
  const auto sy = [&](double ty) {
    return kBottom - (ty - ymin) / (ymax - ymin) * (kBottom - kTop);
  };

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth
      << "\" height=\"" << kHeight << "\" viewBox=\"0 0 " << kWidth << " "
      << kHeight << "\">\n";
  svg << "<rect width=\"" << kWidth << "\" height=\"" << kHeight
      << "\" fill=\"white\"/>\n";
  svg << "<text x=\"" << num((kLeft + kRight) / 2) << "\" y=\"24\" "
         "text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"16\">"
      << escape(options.title) << "</text>\n";

  // y grid and ticks: one per decade, thinned to at most 12 labels.
  const int decades = static_cast<int>(ymax - ymin);
  const int ystep = std::max(1, (decades + 11) / 12);
  for (int e = static_cast<int>(ymin); e <= static_cast<int>(ymax); e += ystep) {
    const double y = sy(static_cast<double>(e));
    svg << "<line x1=\"" << num(kLeft) << "\" y1=\"" << num(y) << "\" x2=\""
        << num(kRight) << "\" y2=\"" << num(y)
        << "\" stroke=\"#dddddd\" stroke-width=\"1\"/>\n";
    svg << "<text x=\"" << num(kLeft - 8) << "\" y=\"" << num(y + 4)
        << "\" text-anchor=\"end\" font-family=\"sans-serif\" "
           "font-size=\"12\">1e"
        << e << "</text>\n";
  }

  // x ticks.
  std::vector<double> xticks;
  if (options.log_x) {
    for (int e = static_cast<int>(std::floor(xmin));
         e <= static_cast<int>(std::ceil(xmax)); ++e)
      if (e >= xmin - 1e-9 && e <= xmax + 1e-9)
        xticks.push_back(static_cast<double>(e));
  } else {
    const double raw = (xmax - xmin) / 6.0;
    const double mag = std::pow(10.0, std::floor(std::log10(raw)));
    double step = mag;
    for (double f : {1.0, 2.0, 5.0, 10.0}) {
      if (mag * f >= raw) {
        step = mag * f;
        break;
      }
    }
    for (double t = std::ceil(xmin / step) * step; t <= xmax + 1e-9 * step;
         t += step)
      xticks.push_back(t);
  }
  for (double t : xticks) {
    const double x = sx(t);
    svg << "<line x1=\"" << num(x) << "\" y1=\"" << num(kBottom) << "\" x2=\""
        << num(x) << "\" y2=\"" << num(kBottom + 5)
        << "\" stroke=\"black\" stroke-width=\"1\"/>\n";
    const double label = options.log_x ? std::pow(10.0, t) : t;
    svg << "<text x=\"" << num(x) << "\" y=\"" << num(kBottom + 20)
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
           "font-size=\"12\">"
        << tick_label(label) << "</text>\n";
  }

  // axes
  svg << "<line x1=\"" << num(kLeft) << "\" y1=\"" << num(kTop) << "\" x2=\""
      << num(kLeft) << "\" y2=\"" << num(kBottom)
      << "\" stroke=\"black\" stroke-width=\"1\"/>\n";
  svg << "<line x1=\"" << num(kLeft) << "\" y1=\"" << num(kBottom)
      << "\" x2=\"" << num(kRight) << "\" y2=\"" << num(kBottom)
      << "\" stroke=\"black\" stroke-width=\"1\"/>\n";
  svg << "<text x=\"" << num((kLeft + kRight) / 2) << "\" y=\""
      << num(kHeight - 12)
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
         "font-size=\"13\">"
      << escape(options.x_label) << "</text>\n";
  svg << "<text x=\"18\" y=\"" << num((kTop + kBottom) / 2)
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
         "font-size=\"13\" transform=\"rotate(-90 18 "
      << num((kTop + kBottom) / 2) << ")\">" << escape(options.y_label)
      << "</text>\n";

  // series
  for (std::size_t s = 0; s < series.size(); ++s) {
    const char* color = kPalette[s % (sizeof(kPalette) / sizeof(kPalette[0]))];
    if (!pts[s].empty()) {
      svg << "<polyline fill=\"none\" stroke=\"" << color
          << "\" stroke-width=\"1.5\" points=\"";
      for (const auto& [tx, ty] : pts[s])
        svg << num(sx(tx)) << "," << num(sy(ty)) << " ";
      svg << "\"/>\n";
    }
    const double ly = kTop + 18.0 * static_cast<double>(s);
    svg << "<line x1=\"" << num(kRight + 12) << "\" y1=\"" << num(ly)
        << "\" x2=\"" << num(kRight + 36) << "\" y2=\"" << num(ly)
        << "\" stroke=\"" << color << "\" stroke-width=\"1.5\"/>\n";
    svg << "<text x=\"" << num(kRight + 42) << "\" y=\"" << num(ly + 4)
        << "\" font-family=\"sans-serif\" font-size=\"12\">"
        << escape(series[s].label) << "</text>\n";
  }
  svg << "</svg>\n";
  return svg.str();
}

void write_line_chart(const std::filesystem::path& path,
                      const std::vector<SvgSeries>& series,
                      const SvgChartOptions& options) {
  write_text_atomic(path, render_line_chart(series, options));
}

}  // namespace sieig
