#pragma once

#include <string>
#include <vector>

namespace seqsmooth {

// Minimal static line-chart writer, enough to eyeball experiment output
// without external tooling. One polyline per series, shared axes,
// legend in the top-right corner.
struct ChartSeries {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
};

void write_line_chart_svg(const std::string& path, const std::string& title,
                          const std::vector<ChartSeries>& series,
                          bool log_log = false);

}  // namespace seqsmooth
