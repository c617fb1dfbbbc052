#include "onestep/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include "onestep/errors.hpp"

namespace onestep {

namespace {

constexpr double kWidth = 800.0;
constexpr double kHeight = 600.0;
constexpr double kMarginLeft = 70.0;
constexpr double kMarginRight = 20.0;
constexpr double kMarginTop = 40.0;
constexpr double kMarginBottom = 55.0;

const char* kPalette[] = {"#1b6ca8", "#c0392b", "#27ae60", "#8e44ad",
                          "#e67e22", "#16a085", "#2c3e50", "#d35400"};

std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.6g", x);
  return buf;
}

struct Range {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  void grow(double v) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  void pad() {
    if (lo == hi) {
      lo -= 0.5;
      hi += 0.5;
    } else {
      const double margin = 0.05 * (hi - lo);
      lo -= margin;
      hi += margin;
    }
  }
};

struct Mapper {
  Range xr, yr;
  double px(double x) const {
    return kMarginLeft + (x - xr.lo) / (xr.hi - xr.lo) *
                             (kWidth - kMarginLeft - kMarginRight);
  }
  double py(double y) const {
    return kHeight - kMarginBottom - (y - yr.lo) / (yr.hi - yr.lo) *
                                         (kHeight - kMarginTop - kMarginBottom);
  }
};

void open_document(std::string& out) {
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"800\" height=\"600\" "
         "viewBox=\"0 0 800 600\">\n";
  out += "<rect width=\"800\" height=\"600\" fill=\"#ffffff\"/>\n";
}

void draw_axes(std::string& out, const Mapper& map, const std::string& title,
               const std::string& x_label, const std::string& y_label) {
  char buf[512];
  const double x0 = kMarginLeft, x1 = kWidth - kMarginRight;
  const double y0 = kHeight - kMarginBottom, y1 = kMarginTop;
  std::snprintf(buf, sizeof(buf),
                "<line x1=\"%s\" y1=\"%s\" x2=\"%s\" y2=\"%s\" stroke=\"#333\"/>\n",
                fmt(x0).c_str(), fmt(y0).c_str(), fmt(x1).c_str(), fmt(y0).c_str());
  out += buf;
  std::snprintf(buf, sizeof(buf),
                "<line x1=\"%s\" y1=\"%s\" x2=\"%s\" y2=\"%s\" stroke=\"#333\"/>\n",
                fmt(x0).c_str(), fmt(y0).c_str(), fmt(x0).c_str(), fmt(y1).c_str());
  out += buf;
  const int ticks = 5;
  for (int i = 0; i <= ticks; ++i) {
    const double f = static_cast<double>(i) / ticks;
    const double xv = map.xr.lo + f * (map.xr.hi - map.xr.lo);
    const double yv = map.yr.lo + f * (map.yr.hi - map.yr.lo);
    std::snprintf(buf, sizeof(buf),
                  "<line x1=\"%s\" y1=\"%s\" x2=\"%s\" y2=\"%s\" stroke=\"#333\"/>\n"
                  "<text x=\"%s\" y=\"%s\" font-size=\"12\" text-anchor=\"middle\" "
                  "fill=\"#333\">%s</text>\n",
                  fmt(map.px(xv)).c_str(), fmt(y0).c_str(), fmt(map.px(xv)).c_str(),
                  fmt(y0 + 5).c_str(), fmt(map.px(xv)).c_str(), fmt(y0 + 20).c_str(),
                  fmt(xv).c_str());
    out += buf;
    std::snprintf(buf, sizeof(buf),
                  "<line x1=\"%s\" y1=\"%s\" x2=\"%s\" y2=\"%s\" stroke=\"#333\"/>\n"
                  "<text x=\"%s\" y=\"%s\" font-size=\"12\" text-anchor=\"end\" "
                  "fill=\"#333\">%s</text>\n",
                  fmt(x0 - 5).c_str(), fmt(map.py(yv)).c_str(), fmt(x0).c_str(),
                  fmt(map.py(yv)).c_str(), fmt(x0 - 8).c_str(),
                  fmt(map.py(yv) + 4).c_str(), fmt(yv).c_str());
    out += buf;
  }
  std::snprintf(buf, sizeof(buf),
                "<text x=\"400\" y=\"24\" font-size=\"16\" text-anchor=\"middle\" "
                "fill=\"#111\">%s</text>\n"
                "<text x=\"435\" y=\"592\" font-size=\"13\" text-anchor=\"middle\" "
                "fill=\"#333\">%s</text>\n"
                "<text x=\"16\" y=\"300\" font-size=\"13\" text-anchor=\"middle\" "
                "fill=\"#333\" transform=\"rotate(-90 16 300)\">%s</text>\n",
                title.c_str(), x_label.c_str(), y_label.c_str());
  out += buf;
}

void draw_series(std::string& out, const Mapper& map,
                 std::span<const SvgSeries> series) {
  char buf[256];
  for (std::size_t s = 0; s < series.size(); ++s) {
    const auto& ser = series[s];
    const char* color = kPalette[s % (sizeof(kPalette) / sizeof(kPalette[0]))];
    if (ser.marker_only) {
      for (std::size_t i = 0; i < ser.xs.size(); ++i) {
        std::snprintf(buf, sizeof(buf),
                      "<circle class=\"series\" cx=\"%s\" cy=\"%s\" r=\"5\" "
                      "fill=\"%s\"><title>%s</title></circle>\n",
                      fmt(map.px(ser.xs[i])).c_str(), fmt(map.py(ser.ys[i])).c_str(),
                      color, ser.label.c_str());
        out += buf;
      }
    } else {
      out += "<polyline class=\"series\" fill=\"none\" stroke=\"";
      out += color;
      out += "\" stroke-width=\"2\" points=\"";
      for (std::size_t i = 0; i < ser.xs.size(); ++i) {
        if (i) out += ' ';
        out += fmt(map.px(ser.xs[i]));
        out += ',';
        out += fmt(map.py(ser.ys[i]));
      }
      out += "\"><title>" + ser.label + "</title></polyline>\n";
    }
  }
  // legend
  double ly = kMarginTop + 6;
  for (std::size_t s = 0; s < series.size(); ++s) {
    const char* color = kPalette[s % (sizeof(kPalette) / sizeof(kPalette[0]))];
    std::snprintf(buf, sizeof(buf),
                  "<rect x=\"%s\" y=\"%s\" width=\"12\" height=\"4\" fill=\"%s\"/>"
                  "<text x=\"%s\" y=\"%s\" font-size=\"12\" fill=\"#333\">%s</text>\n",
                  fmt(kWidth - 190).c_str(), fmt(ly).c_str(), color,
                  fmt(kWidth - 172).c_str(), fmt(ly + 6).c_str(),
                  series[s].label.c_str());
    out += buf;
    ly += 18;
  }
}

Mapper mapper_for(std::span<const SvgSeries> series) {
  Mapper map;
  for (const auto& ser : series) {
    if (ser.xs.empty() || ser.xs.size() != ser.ys.size())
      throw DomainError("svg: empty or ragged series");
    for (double x : ser.xs) map.xr.grow(x);
    for (double y : ser.ys) map.yr.grow(y);
  }
  map.xr.pad();
  map.yr.pad();
  return map;
}

} // namespace

std::string render_line_chart(const std::string& title,
                              const std::string& x_label,
                              const std::string& y_label,
                              std::span<const SvgSeries> series) {
  if (series.empty()) throw DomainError("svg: no series");
  const Mapper map = mapper_for(series);
  std::string out;
  open_document(out);
  draw_axes(out, map, title, x_label, y_label);
  draw_series(out, map, series);
  out += "</svg>\n";
  return out;
}

std::string render_heatmap(const std::string& title, const std::string& x_label,
                           const std::string& y_label,
                           std::span<const HeatCell> cells, double cell_w,
                           double cell_h, std::span<const SvgSeries> overlays) {
  if (cells.empty()) throw DomainError("svg: no heatmap cells");
  Mapper map;
  Range vr;
  for (const auto& c : cells) {
    map.xr.grow(c.x - 0.5 * cell_w);
    map.xr.grow(c.x + 0.5 * cell_w);
    map.yr.grow(c.y - 0.5 * cell_h);
    map.yr.grow(c.y + 0.5 * cell_h);
    vr.grow(c.value);
  }
  for (const auto& ser : overlays) {
    for (double x : ser.xs) map.xr.grow(x);
    for (double y : ser.ys) map.yr.grow(y);
  }
  map.xr.pad();
  map.yr.pad();

  std::string out;
  open_document(out);
  draw_axes(out, map, title, x_label, y_label);

  // Two-stop linear ramp, light to dark.
  const int r0 = 0xf7, g0 = 0xfb, b0 = 0xff;
  const int r1 = 0x08, g1 = 0x30, b1 = 0x6b;
  char buf[256];
  const double span_v = vr.hi > vr.lo ? vr.hi - vr.lo : 1.0;
  for (const auto& c : cells) {
    const double f = (c.value - vr.lo) / span_v;
    const int r = static_cast<int>(std::lround(r0 + f * (r1 - r0)));
    const int g = static_cast<int>(std::lround(g0 + f * (g1 - g0)));
    const int b = static_cast<int>(std::lround(b0 + f * (b1 - b0)));
    const double x = map.px(c.x - 0.5 * cell_w);
    const double y = map.py(c.y + 0.5 * cell_h);
    const double w = map.px(c.x + 0.5 * cell_w) - x;
    const double h = map.py(c.y - 0.5 * cell_h) - y;
    std::snprintf(buf, sizeof(buf),
                  "<rect x=\"%s\" y=\"%s\" width=\"%s\" height=\"%s\" "
                  "fill=\"#%02x%02x%02x\"/>\n",
                  fmt(x).c_str(), fmt(y).c_str(), fmt(w).c_str(), fmt(h).c_str(),
                  r, g, b);
    out += buf;
  }
  draw_series(out, map, overlays);
  out += "</svg>\n";
  return out;
}

} // namespace onestep
