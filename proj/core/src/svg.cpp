#include "rotvel/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>

namespace rotvel {

namespace {

constexpr int kWidth = 800;
constexpr int kHeight = 520;
constexpr int kMarginLeft = 78;
constexpr int kMarginRight = 160;
constexpr int kMarginTop = 48;
constexpr int kMarginBottom = 58;

const char* kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

// Tick step of the form {1, 2, 5} * 10^k giving 4-8 ticks over span.
double nice_step(double span) {
  if (span <= 0.0 || !std::isfinite(span)) return 1.0;
  const double raw = span / 5.0;
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  const double r = raw / mag;
  if (r < 1.5) return mag;
  if (r < 3.5) return 2.0 * mag;
  if (r < 7.5) return 5.0 * mag;
  return 10.0 * mag;
}

}  // namespace

Result<bool> write_svg_chart(const std::string& path, const SvgLineChart& chart) {
  double x_min = 0.0, x_max = 1.0, y_min = 0.0, y_max = 1.0;
  bool first = true;
  for (const auto& s : chart.series) {
    for (const auto& [x, y] : s.points) {
      if (!std::isfinite(x) || !std::isfinite(y)) continue;
      if (first) {
        x_min = x_max = x;
        y_min = y_max = y;
        first = false;
      } else {
        x_min = std::min(x_min, x);
        x_max = std::max(x_max, x);
        y_min = std::min(y_min, y);
        y_max = std::max(y_max, y);
      }
    }
  }
  if (x_max - x_min < 1e-12) {
    x_min -= 0.5;
    x_max += 0.5;
  }
  if (y_max - y_min < 1e-12) {
    y_min -= 0.5;
    y_max += 0.5;
  }
  // A little headroom above and below the data.
  const double y_pad = 0.06 * (y_max - y_min);
  y_min -= y_pad;
  y_max += y_pad;

  const double plot_w = kWidth - kMarginLeft - kMarginRight;
  const double plot_h = kHeight - kMarginTop - kMarginBottom;
  const auto sx = [&](double x) { return kMarginLeft + (x - x_min) / (x_max - x_min) * plot_w; };
  const auto sy = [&](double y) {
    return kMarginTop + plot_h - (y - y_min) / (y_max - y_min) * plot_h;
  };

  std::ofstream out(path);
  if (!out.is_open()) {
    return make_error(ErrorCode::ParseError, path + ": cannot open for writing");
  }
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\""
      << kHeight << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight << "\">\n";
  out << "  <rect width=\"" << kWidth << "\" height=\"" << kHeight << "\" fill=\"white\"/>\n";
  out << "  <text x=\"" << kWidth / 2 << "\" y=\"28\" font-family=\"sans-serif\" font-size=\"17\""
      << " text-anchor=\"middle\">" << chart.title << "</text>\n";

  // Gridlines and tick labels.
  const double x_step = nice_step(x_max - x_min);
  const double y_step = nice_step(y_max - y_min);
  out << "  <g font-family=\"sans-serif\" font-size=\"12\" fill=\"#333\">\n";
  for (double tx = std::ceil(x_min / x_step) * x_step; tx <= x_max + 1e-12 * x_step;
       tx += x_step) {
    const double px = sx(tx);
    out << "    <line x1=\"" << fmt(px) << "\" y1=\"" << kMarginTop << "\" x2=\"" << fmt(px)
        << "\" y2=\"" << kMarginTop + plot_h << "\" stroke=\"#ddd\"/>\n";
    out << "    <text x=\"" << fmt(px) << "\" y=\"" << kMarginTop + plot_h + 18
        << "\" text-anchor=\"middle\">" << fmt(tx) << "</text>\n";
  }
  for (double ty = std::ceil(y_min / y_step) * y_step; ty <= y_max + 1e-12 * y_step;
       ty += y_step) {
    const double py = sy(ty);
    out << "    <line x1=\"" << kMarginLeft << "\" y1=\"" << fmt(py) << "\" x2=\""
        << kMarginLeft + plot_w << "\" y2=\"" << fmt(py) << "\" stroke=\"#ddd\"/>\n";
    out << "    <text x=\"" << kMarginLeft - 8 << "\" y=\"" << fmt(py + 4)
        << "\" text-anchor=\"end\">" << fmt(ty) << "</text>\n";
  }
  out << "  </g>\n";

  // Axes.
  out << "  <rect x=\"" << kMarginLeft << "\" y=\"" << kMarginTop << "\" width=\"" << fmt(plot_w)
      << "\" height=\"" << fmt(plot_h) << "\" fill=\"none\" stroke=\"#333\"/>\n";
  out << "  <text x=\"" << kMarginLeft + plot_w / 2 << "\" y=\"" << kHeight - 14
      << "\" font-family=\"sans-serif\" font-size=\"14\" text-anchor=\"middle\">" << chart.x_label
      << "</text>\n";
  out << "  <text x=\"20\" y=\"" << kMarginTop + plot_h / 2
      << "\" font-family=\"sans-serif\" font-size=\"14\" text-anchor=\"middle\""
      << " transform=\"rotate(-90 20 " << kMarginTop + plot_h / 2 << ")\">" << chart.y_label
      << "</text>\n";

  // Series polylines, point markers and legend.
  for (size_t si = 0; si < chart.series.size(); ++si) {
    const auto& s = chart.series[si];
    const char* color = kColors[si % (sizeof kColors / sizeof kColors[0])];
    out << "  <polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"2\" points=\"";
    for (const auto& [x, y] : s.points) {
      if (!std::isfinite(x) || !std::isfinite(y)) continue;
      out << fmt(sx(x)) << ',' << fmt(sy(y)) << ' ';
    }
    out << "\"/>\n";
    for (const auto& [x, y] : s.points) {
      if (!std::isfinite(x) || !std::isfinite(y)) continue;
      out << "  <circle cx=\"" << fmt(sx(x)) << "\" cy=\"" << fmt(sy(y))
          << "\" r=\"3\" fill=\"" << color << "\"/>\n";
    }
    const double ly = kMarginTop + 16 + 22 * static_cast<double>(si);
    out << "  <line x1=\"" << kWidth - kMarginRight + 14 << "\" y1=\"" << fmt(ly - 4)
        << "\" x2=\"" << kWidth - kMarginRight + 44 << "\" y2=\"" << fmt(ly - 4) << "\" stroke=\""
        << color << "\" stroke-width=\"2\"/>\n";
    out << "  <text x=\"" << kWidth - kMarginRight + 50 << "\" y=\"" << fmt(ly)
        << "\" font-family=\"sans-serif\" font-size=\"13\">" << s.name << "</text>\n";
  }
  out << "</svg>\n";
  return true;
}

}  // namespace rotvel
