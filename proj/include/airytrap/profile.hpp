#pragma once

#include <string>
#include <vector>

#include "airytrap/airy.hpp"

namespace airytrap {

enum class Scenario { stationary, pulling, pushing };
enum class Frame { comoving, lab };

std::string to_string(Scenario s);
Scenario scenario_from_string(const std::string& name);

/// Uniform sampling request: n points from min to max inclusive.
struct GridSpec {
  double min = -40.0;
  double max = 10.0;
  int n = 2001;
};

/// Parses "min:max:n". Throws ConfigError on malformed input.
GridSpec parse_grid_spec(const std::string& text);

/// Uniform grid for spec. When require_origin is set, 0 is inserted as a node if the
/// uniform points miss it, so the matching point of a piecewise profile is always sampled.
std::vector<double> make_grid(const GridSpec& spec, bool require_origin);

/// Sampled complex wavefunction. In the comoving frame grid holds xi; after
/// comoving_to_lab it holds the laboratory coordinate x.
struct WavefunctionProfile {
  Scenario scenario = Scenario::stationary;
  double field = 0.0;
  Complex energy;
  std::vector<double> grid;
  std::vector<Complex> values;
  Frame frame = Frame::comoving;
  double tau = 0.0;
  double t = 0.0;
};

/// Trapezoidal integral of |values|^2 over the grid.
double grid_norm(const std::vector<double>& grid, const std::vector<Complex>& values);

/// Index of the node at exactly 0, or -1.
int origin_index(const std::vector<double>& grid);

}  // namespace airytrap
