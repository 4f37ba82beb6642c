#include "airytrap/plot.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <limits>
#include <utility>

#include "airytrap/errors.hpp"

namespace airytrap {
namespace {

constexpr double kLeft = 78.0, kRight = 24.0, kTop = 34.0, kBottom = 48.0;

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string label(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", v);
  return buf;
}

std::string escape(const std::string& s) {
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

struct Range {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  void add(double v) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  bool valid() const { return lo <= hi; }
  void pad() {
    if (hi - lo <= 1e-300 * std::max(1.0, std::abs(lo))) {
      const double d = lo == 0.0 ? 0.5 : 0.05 * std::abs(lo);
      lo -= d;
      hi += d;
    }
  }
};

bool usable(double v, bool log) { return std::isfinite(v) && (!log || v > 0.0); }
double warp(double v, bool log) { return log ? std::log10(v) : v; }

// Axis mapping in warped (possibly log10) coordinates.
struct Scale {
  double lo, hi, p0, p1;
  double operator()(double w) const { return p0 + (w - lo) / (hi - lo) * (p1 - p0); }
};

std::vector<double> ticks(double lo, double hi, bool log) {
  std::vector<double> t;
  if (log) {
    for (double d = std::ceil(lo - 1e-9); d <= hi + 1e-9; d += 1.0) t.push_back(d);
    if (t.size() >= 2) return t;
    t.clear();
  }
  const double raw = (hi - lo) / 5.0;
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  double step = mag;
  for (double m : {1.0, 2.0, 5.0, 10.0}) {
    step = m * mag;
    if (step >= raw) break;
  }
  for (double v = std::ceil(lo / step - 1e-9) * step; v <= hi + 1e-9 * step; v += step)
    t.push_back(std::abs(v) < 1e-12 * step ? 0.0 : v);
  return t;
}

std::string tick_text(double w, bool log) {
  if (log && std::abs(w - std::round(w)) < 1e-9) return "1e" + label(std::round(w));
  return label(log ? std::pow(10.0, w) : w);
}

void draw_frame(std::string& svg, const Axes& axes, const Scale& sx, const Scale& sy,
                double top, double bottom) {
  svg += "<rect x=\"" + num(sx.p0) + "\" y=\"" + num(top) + "\" width=\"" + num(sx.p1 - sx.p0) +
         "\" height=\"" + num(bottom - top) + "\" fill=\"none\" stroke=\"#333\"/>\n";
  for (double w : ticks(sx.lo, sx.hi, axes.log_x)) {
    const double px = sx(w);
    svg += "<line x1=\"" + num(px) + "\" y1=\"" + num(bottom) + "\" x2=\"" + num(px) + "\" y2=\"" +
           num(bottom + 5) + "\" stroke=\"#333\"/>\n";
    svg += "<text x=\"" + num(px) + "\" y=\"" + num(bottom + 18) +
           "\" text-anchor=\"middle\" font-size=\"11\">" + escape(tick_text(w, axes.log_x)) +
           "</text>\n";
  }
  for (double w : ticks(sy.lo, sy.hi, axes.log_y)) {
    const double py = sy(w);
    svg += "<line x1=\"" + num(sx.p0 - 5) + "\" y1=\"" + num(py) + "\" x2=\"" + num(sx.p0) +
           "\" y2=\"" + num(py) + "\" stroke=\"#333\"/>\n";
    svg += "<text x=\"" + num(sx.p0 - 8) + "\" y=\"" + num(py + 4) +
           "\" text-anchor=\"end\" font-size=\"11\">" + escape(tick_text(w, axes.log_y)) +
           "</text>\n";
  }
  if (!axes.title.empty())
    svg += "<text x=\"" + num(0.5 * (sx.p0 + sx.p1)) + "\" y=\"" + num(top - 10) +
           "\" text-anchor=\"middle\" font-size=\"13\">" + escape(axes.title) + "</text>\n";
  if (!axes.xlabel.empty())
    svg += "<text x=\"" + num(0.5 * (sx.p0 + sx.p1)) + "\" y=\"" + num(bottom + 36) +
           "\" text-anchor=\"middle\" font-size=\"12\">" + escape(axes.xlabel) + "</text>\n";
  if (!axes.ylabel.empty()) {
    const double cy = 0.5 * (top + bottom);
    svg += "<text x=\"16\" y=\"" + num(cy) + "\" text-anchor=\"middle\" font-size=\"12\" " +
           "transform=\"rotate(-90 16 " + num(cy) + ")\">" + escape(axes.ylabel) + "</text>\n";
  }
}

void draw_series(std::string& svg, const Series& s, const Axes& axes, const Scale& sx,
                 const Scale& sy, const std::string& clip) {
  const std::size_t n = std::min(s.x.size(), s.y.size());
  if (s.style == LineStyle::markers) {
    for (std::size_t k = 0; k < n; ++k) {
      if (!usable(s.x[k], axes.log_x) || !usable(s.y[k], axes.log_y)) continue;
      svg += "<circle cx=\"" + num(sx(warp(s.x[k], axes.log_x))) + "\" cy=\"" +
             num(sy(warp(s.y[k], axes.log_y))) + "\" r=\"3\" fill=\"" + s.color + "\"/>\n";
    }
    return;
  }
  const std::string dash = s.style == LineStyle::dotted ? " stroke-dasharray=\"2 3\"" : "";
  std::vector<std::pair<double, double>> pts;
  auto flush = [&] {
    if (pts.size() == 1) {
      svg += "<circle cx=\"" + num(pts[0].first) + "\" cy=\"" + num(pts[0].second) +
             "\" r=\"3\" fill=\"" + s.color + "\"/>\n";
    } else if (pts.size() > 1) {
      svg += "<polyline clip-path=\"url(#" + clip + ")\" fill=\"none\" stroke=\"" + s.color +
             "\" stroke-width=\"1.6\"" + dash + " points=\"";
      for (std::size_t k = 0; k < pts.size(); ++k)
        svg += (k ? " " : "") + num(pts[k].first) + "," + num(pts[k].second);
      svg += "\"/>\n";
    }
    pts.clear();
  };
  for (std::size_t k = 0; k < n; ++k) {
    if (!usable(s.x[k], axes.log_x) || !usable(s.y[k], axes.log_y)) {
      flush();
      continue;
    }
    pts.emplace_back(sx(warp(s.x[k], axes.log_x)), sy(warp(s.y[k], axes.log_y)));
  }
  flush();
}

void draw_legend(std::string& svg, const std::vector<Series>& series, double x, double y) {
  int row = 0;
  for (const auto& s : series) {
    if (s.label.empty()) continue;
    const double yy = y + 16.0 * row++;
    svg += "<line x1=\"" + num(x) + "\" y1=\"" + num(yy) + "\" x2=\"" + num(x + 22) + "\" y2=\"" +
           num(yy) + "\" stroke=\"" + s.color + "\" stroke-width=\"2\"" +
           (s.style == LineStyle::dotted ? " stroke-dasharray=\"2 3\"" : "") + "/>\n";
    svg += "<text x=\"" + num(x + 28) + "\" y=\"" + num(yy + 4) + "\" font-size=\"11\">" +
           escape(s.label) + "</text>\n";
  }
}

std::string header(int width, double height) {
  return "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + std::to_string(width) +
         "\" height=\"" + num(height) + "\" viewBox=\"0 0 " + std::to_string(width) + " " +
         num(height) + "\" font-family=\"sans-serif\">\n<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
}

std::string clip_rect(const std::string& id, double x0, double y0, double x1, double y1) {
  return "<clipPath id=\"" + id + "\"><rect x=\"" + num(x0) + "\" y=\"" + num(y0) +
         "\" width=\"" + num(x1 - x0) + "\" height=\"" + num(y1 - y0) + "\"/></clipPath>\n";
}

std::array<int, 3> colormap(double t) {
  static const double anchors[][3] = {{68, 1, 84},    {59, 82, 139},  {33, 145, 140},
                                      {94, 201, 98},  {253, 231, 37}};
  t = std::clamp(std::isfinite(t) ? t : 0.0, 0.0, 1.0) * 4.0;
  const int i = std::min(3, static_cast<int>(t));
  const double f = t - i;
  std::array<int, 3> c{};
  for (int k = 0; k < 3; ++k)
    c[k] = static_cast<int>(std::lround(anchors[i][k] + f * (anchors[i + 1][k] - anchors[i][k])));
  return c;
}

std::string hex(const std::array<int, 3>& c) {
  char buf[8];
  std::snprintf(buf, sizeof buf, "#%02x%02x%02x", c[0], c[1], c[2]);
  return buf;
}

}  // namespace

std::string render_line_svg(const std::vector<Panel>& panels, int width, int panel_height) {
  bool any = false;
  for (const auto& p : panels)
    for (const auto& s : p.series)
      for (std::size_t k = 0; k < std::min(s.x.size(), s.y.size()); ++k)
        any = any || (usable(s.x[k], p.axes.log_x) && usable(s.y[k], p.axes.log_y));
  if (!any) throw EmptyDataError("nothing to plot: no finite points");

  const double height = static_cast<double>(panel_height) * panels.size();
  std::string svg = header(width, height);
  for (std::size_t i = 0; i < panels.size(); ++i) {
    const Panel& p = panels[i];
    Range rx, ry;
    for (const auto& s : p.series)
      for (std::size_t k = 0; k < std::min(s.x.size(), s.y.size()); ++k)
        if (usable(s.x[k], p.axes.log_x) && usable(s.y[k], p.axes.log_y)) {
          rx.add(warp(s.x[k], p.axes.log_x));
          ry.add(warp(s.y[k], p.axes.log_y));
        }
    if (!rx.valid()) continue;
    rx.pad();
    ry.pad();
    const double margin = 0.04 * (ry.hi - ry.lo);
    ry.lo -= margin;
    ry.hi += margin;
    const double top = panel_height * static_cast<double>(i) + kTop;
    const double bottom = panel_height * static_cast<double>(i + 1) - kBottom;
    const Scale sx{rx.lo, rx.hi, kLeft, width - kRight};
    const Scale sy{ry.lo, ry.hi, bottom, top};
    const std::string clip = "clip" + std::to_string(i);
    svg += clip_rect(clip, sx.p0, top, sx.p1, bottom);
    draw_frame(svg, p.axes, sx, sy, top, bottom);
    for (const auto& s : p.series) draw_series(svg, s, p.axes, sx, sy, clip);
    draw_legend(svg, p.series, sx.p1 - 170.0, top + 16.0);
  }
  svg += "</svg>\n";
  return svg;
}

std::string render_line_svg(const Panel& panel, int width, int height) {
  return render_line_svg(std::vector<Panel>{panel}, width, height);
}

std::string render_heatmap_svg(const Heatmap& map, int width, int height) {
  const std::size_t ny = map.z.size();
  if (ny == 0 || map.z.front().empty() || map.x.size() != map.z.front().size() ||
      map.y.size() != ny)
    throw EmptyDataError("heatmap needs a non-empty z with matching x and y axes");
  const std::size_t nx = map.x.size();

  // Block-average to the display resolution.
  const std::size_t bx = (nx + 239) / 240, by = (ny + 179) / 180;
  const std::size_t cx = (nx + bx - 1) / bx, cy = (ny + by - 1) / by;
  std::vector<std::vector<double>> cells(cy, std::vector<double>(cx, 0.0));
  double zmax = -std::numeric_limits<double>::infinity();
  for (std::size_t r = 0; r < cy; ++r)
    for (std::size_t c = 0; c < cx; ++c) {
      double sum = 0.0;
      int cnt = 0;
      for (std::size_t i = r * by; i < std::min(ny, (r + 1) * by); ++i)
        for (std::size_t j = c * bx; j < std::min(nx, (c + 1) * bx); ++j)
          if (std::isfinite(map.z[i][j])) {
            sum += map.z[i][j];
            ++cnt;
          }
      cells[r][c] = cnt ? sum / cnt : 0.0;
      zmax = std::max(zmax, cells[r][c]);
    }
  double zmin = 0.0;
  if (map.log_color) {
    zmax = zmax > 0.0 ? std::log10(zmax) : 0.0;
    zmin = zmax - 6.0;
  } else {
    zmin = std::numeric_limits<double>::infinity();
    for (const auto& row : cells)
      for (double v : row) zmin = std::min(zmin, v);
  }
  if (!(zmax > zmin)) zmax = zmin + 1.0;

  const double bar = 70.0;
  const double top = kTop, bottom = height - kBottom;
  const Scale sx{map.x.front(), map.x.back(), kLeft, width - kRight - bar};
  const Scale sy{map.y.front(), map.y.back(), bottom, top};
  if (!(sx.hi != sx.lo) || !(sy.hi != sy.lo)) throw EmptyDataError("heatmap axes are degenerate");

  std::string svg = header(width, height);
  svg += clip_rect("plot", sx.p0, top, sx.p1, bottom);
  svg += "<g clip-path=\"url(#plot)\" shape-rendering=\"crispEdges\">\n";
  const double w = (sx.p1 - sx.p0) / cx, h = (bottom - top) / cy;
  const bool flip_y = sy.hi < sy.lo;
  for (std::size_t r = 0; r < cy; ++r) {
    const double y0 = flip_y ? top + r * h : bottom - (r + 1) * h;
    for (std::size_t c = 0; c < cx; ++c) {
      double v = cells[r][c];
      if (map.log_color) v = v > 0.0 ? std::log10(v) : zmin;
      svg += "<rect x=\"" + num(sx.p0 + c * w) + "\" y=\"" + num(y0) + "\" width=\"" + num(w + 0.3) +
             "\" height=\"" + num(h + 0.3) + "\" fill=\"" + hex(colormap((v - zmin) / (zmax - zmin))) +
             "\"/>\n";
    }
  }
  svg += "</g>\n";
  Axes axes = map.axes;
  axes.log_x = axes.log_y = false;
  draw_frame(svg, axes, sx, sy, top, bottom);
  for (const auto& s : map.overlays) draw_series(svg, s, axes, sx, sy, "plot");

  // Colorbar.
  const double bx0 = sx.p1 + 18.0, bw = 14.0;
  const int steps = 64;
  for (int k = 0; k < steps; ++k) {
    const double yy = bottom - (k + 1) * (bottom - top) / steps;
    svg += "<rect x=\"" + num(bx0) + "\" y=\"" + num(yy) + "\" width=\"" + num(bw) + "\" height=\"" +
           num((bottom - top) / steps + 0.3) + "\" fill=\"" + hex(colormap((k + 0.5) / steps)) + "\"/>\n";
  }
  auto bar_text = [&](double y, double v) {
    svg += "<text x=\"" + num(bx0 + bw + 4) + "\" y=\"" + num(y) + "\" font-size=\"10\">" +
           escape(label(map.log_color ? std::pow(10.0, v) : v)) + "</text>\n";
  };
  bar_text(top + 8, zmax);
  bar_text(bottom, zmin);
  if (!map.colorbar_label.empty())
    svg += "<text x=\"" + num(bx0) + "\" y=\"" + num(top - 8) + "\" font-size=\"11\">" +
           escape(map.colorbar_label) + "</text>\n";
  svg += "</svg>\n";
  return svg;
}

}  // namespace airytrap
