#pragma once

#include <span>
#include <string>
#include <vector>

namespace onestep {

struct SvgSeries {
  std::string label;
  std::vector<double> xs;
  std::vector<double> ys;
  bool marker_only = false; // draw circles instead of a polyline
};

struct HeatCell {
  double x = 0.0;
  double y = 0.0;
  double value = 0.0;
};

/// Self-contained 800x600 line chart. Output is a pure function of the
/// input: identical calls produce byte-identical SVG.
std::string render_line_chart(const std::string& title,
                              const std::string& x_label,
                              const std::string& y_label,
                              std::span<const SvgSeries> series);

/// Heatmap of square cells (cell widths in data units) with optional line
/// overlays, same determinism contract as the line chart.
std::string render_heatmap(const std::string& title, const std::string& x_label,
                           const std::string& y_label,
                           std::span<const HeatCell> cells, double cell_w,
                           double cell_h, std::span<const SvgSeries> overlays);

} // namespace onestep
