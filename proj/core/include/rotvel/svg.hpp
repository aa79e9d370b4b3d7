#pragma once

#include <string>
#include <utility>
#include <vector>

#include "rotvel/errors.hpp"

namespace rotvel {

// Minimal static line chart, written directly as SVG (no display required).
struct SvgSeries {
  std::string name;
  std::vector<std::pair<double, double>> points;  // sorted by x by the caller
};

struct SvgLineChart {
  std::string title;
  std::string x_label;
  std::string y_label;
  std::vector<SvgSeries> series;
};

Result<bool> write_svg_chart(const std::string& path, const SvgLineChart& chart);

}  // namespace rotvel
