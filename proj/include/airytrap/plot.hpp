#pragma once

#include <string>
#include <vector>

namespace airytrap {

enum class LineStyle { solid, dotted, markers };

struct Series {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
  std::string color = "#1f4e9c";
  LineStyle style = LineStyle::solid;
};

struct Axes {
  std::string title;
  std::string xlabel;
  std::string ylabel;
  bool log_x = false;
  bool log_y = false;
};

struct Panel {
  Axes axes;
  std::vector<Series> series;
};

/// Panels stacked top to bottom with a shared width. Points that are not finite, or not
/// positive on a log axis, are skipped and break the line. Output depends only on the
/// input. EmptyDataError if no panel has a drawable point.
std::string render_line_svg(const std::vector<Panel>& panels, int width = 720,
                            int panel_height = 320);
std::string render_line_svg(const Panel& panel, int width = 720, int height = 400);

/// z[row][col] sampled at (x[col], y[row]). Large maps are block-averaged down to at most
/// 240 x 180 cells. Overlays are drawn in data coordinates on top.
struct Heatmap {
  Axes axes;
  std::vector<double> x;
  std::vector<double> y;
  std::vector<std::vector<double>> z;
  bool log_color = false;
  std::string colorbar_label;
  std::vector<Series> overlays;
};

std::string render_heatmap_svg(const Heatmap& map, int width = 720, int height = 480);

}  // namespace airytrap
