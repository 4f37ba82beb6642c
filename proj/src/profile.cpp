#include "airytrap/profile.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "airytrap/errors.hpp"

namespace airytrap {

std::string to_string(Scenario s) {
  switch (s) {
    case Scenario::stationary:
      return "stationary";
    case Scenario::pulling:
      return "pulling";
    case Scenario::pushing:
      return "pushing";
  }
  return "unknown";
}

Scenario scenario_from_string(const std::string& name) {
  if (name == "stationary") return Scenario::stationary;
  if (name == "pulling") return Scenario::pulling;
  if (name == "pushing") return Scenario::pushing;
  throw ConfigError("unknown scenario '" + name + "'");
}

GridSpec parse_grid_spec(const std::string& text) {
  GridSpec spec;
  std::istringstream in(text);
  std::string a, b, c;
  if (!std::getline(in, a, ':') || !std::getline(in, b, ':') || !std::getline(in, c) ||
      !in.eof()) {
    throw ConfigError("grid spec must look like min:max:n, got '" + text + "'");
  }
  try {
    std::size_t used = 0;
    spec.min = std::stod(a, &used);
    if (used != a.size()) throw std::invalid_argument(a);
    spec.max = std::stod(b, &used);
    if (used != b.size()) throw std::invalid_argument(b);
    spec.n = std::stoi(c, &used);
    if (used != c.size()) throw std::invalid_argument(c);
  } catch (const std::logic_error&) {
    throw ConfigError("grid spec must look like min:max:n, got '" + text + "'");
  }
  if (!(spec.max > spec.min) || spec.n < 2) {
    throw ConfigError("grid spec needs max > min and n >= 2, got '" + text + "'");
  }
  return spec;
}

std::vector<double> make_grid(const GridSpec& spec, bool require_origin) {
  if (!(spec.max > spec.min) || spec.n < 2) throw ConfigError("degenerate grid");
  std::vector<double> grid(static_cast<std::size_t>(spec.n));
  const double step = (spec.max - spec.min) / (spec.n - 1);
  for (int k = 0; k < spec.n; ++k) grid[k] = spec.min + step * k;
  grid.back() = spec.max;
  if (require_origin) {
    if (!(spec.min < 0.0 && spec.max > 0.0)) {
      throw ConfigError("grid must straddle the matching point 0");
    }
    // Snap a node that is within rounding of 0, otherwise insert one.
    auto nearest = std::min_element(grid.begin(), grid.end(), [](double x, double y) {
      return std::abs(x) < std::abs(y);
    });
    if (std::abs(*nearest) <= 1e-9 * step) {
      *nearest = 0.0;
    } else {
      grid.insert(std::upper_bound(grid.begin(), grid.end(), 0.0), 0.0);
    }
  }
  return grid;
}

double grid_norm(const std::vector<double>& grid, const std::vector<Complex>& values) {
  double sum = 0.0;
  for (std::size_t k = 1; k < grid.size(); ++k) {
    sum += 0.5 * (grid[k] - grid[k - 1]) * (std::norm(values[k]) + std::norm(values[k - 1]));
  }
  return sum;
}

int origin_index(const std::vector<double>& grid) {
  auto it = std::lower_bound(grid.begin(), grid.end(), 0.0);
  if (it == grid.end() || *it != 0.0) return -1;
  return static_cast<int>(it - grid.begin());
}

}  // namespace airytrap
