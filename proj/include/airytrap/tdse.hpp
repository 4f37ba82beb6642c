#pragma once

#include <string>
#include <utility>
#include <vector>

#include "airytrap/frames.hpp"
#include "airytrap/profile.hpp"

namespace airytrap {

enum class InitialState { bound_state, hard_wall_state, custom };

std::string to_string(InitialState s);
InitialState initial_state_from_string(const std::string& name);

/// Time-domain run of i phi_tau = -phi_xixi -+ delta_w(xi) phi + F xi phi in the
/// comoving frame. Scenario pulling takes the attractive sign, pushing the repulsive one.
struct TdseConfig {
  Scenario scenario = Scenario::pulling;
  double field = 0.1;
  double epsilon = 0.5;
  double xi_min = -300.0;
  double xi_max = 40.0;
  int n_points = 17001;
  double dt = 0.01;
  double t_final = 100.0;
  double delta_width = 0.06;     // standard deviation of the Gaussian delta
  bool calibrate_delta = true;   // rescale its strength to the point-interaction jump condition
  double cap_strength = 8.0;
  double cap_width = 40.0;        // left edge, where tunnelled flux leaves
  double cap_width_right = 10.0;  // right edge, up the potential slope
  bool use_cap = true;
  InitialState initial = InitialState::bound_state;
  std::vector<Complex> custom_initial;  // on the run grid, for InitialState::custom
  double trap_halfwidth = 5.0;          // pulling: P = integral over |xi| <= this
  int snapshot_stride = 50;             // steps between stored density rows
  int xi_stride = 0;                    // grid points between stored columns, 0 = automatic
};

/// Defaults for the two figure configurations.
TdseConfig pulling_figure_config();
TdseConfig pushing_figure_config();

/// Throws ConfigError on any violated invariant: w >= 3 dxi, CAPs inside the domain and
/// clear of the trap window, and the phase-accuracy bounds k dxi <= 1, k^2 dt <= 1 for the
/// fastest wave the slope can produce inside the domain.
void validate(const TdseConfig& config);

std::vector<double> tdse_grid(const TdseConfig& config);

struct TdseRun {
  TdseConfig config;
  double delta_strength = 1.0;          // calibrated prefactor of delta_w
  std::vector<double> snapshot_tau;
  std::vector<double> snapshot_xi;
  std::vector<std::vector<double>> density;  // [snapshot][column]
  std::vector<std::pair<double, double>> norm_in_trap;
  std::vector<double> total_norm;            // discrete norm at every step
  std::vector<Complex> final_state;
  double fitted_gamma = 0.0;                 // NaN unless a fit with r2 >= 0.99 succeeded
  std::pair<double, double> fit_window{0.0, 0.0};
  double fit_r2 = 0.0;
};

/// (1/sqrt 2) e^{-|xi|/2}, rescaled to unit grid norm. DomainError unless the grid
/// covers [-20, 20].
WavefunctionProfile initial_bound_state(const std::vector<double>& grid);

/// N Ai(F^{1/3} xi + a1) for xi > 0, zero elsewhere, unit grid norm.
WavefunctionProfile initial_hard_wall_state(double field, const std::vector<double>& grid);

/// Strength g for which -d^2 - g delta_w on the grid spacing dxi has its ground level at
/// exactly -1/4. With repulsive set, g is chosen so -d^2 + g delta_w reproduces the point
/// barrier's jump condition instead (even solution e^{|xi|/2} at E = -1/4).
double calibrated_delta_strength(double width, double dxi, bool repulsive = false);

/// Lowest eigenvalue of the discretized F = 0 well -d^2 - g delta_w.
double discrete_ground_energy(double width, double dxi, double strength);

/// Crank-Nicolson evolution with a polynomial complex absorbing potential.
/// StabilityError if the discrete norm grows by more than 1e-6 in a step.
TdseRun evolve(const TdseConfig& config);

struct DecayFit {
  double gamma = 0.0;
  double r2 = 0.0;
  std::pair<double, double> window{0.0, 0.0};
};

/// Least-squares slope of ln P over [tau1, tau2]; gamma = -slope.
/// FitError when P rises by more than 1e-6 inside the window or too few samples.
DecayFit fit_decay_rate(const std::vector<std::pair<double, double>>& samples, double tau1,
                        double tau2);
DecayFit fit_decay_rate(const TdseRun& run, double tau1, double tau2);

/// Default window: from the first time P < 0.95 to the end of the run.
DecayFit fit_decay_rate(const TdseRun& run);

/// |phi|^2 resampled on (x, t): x = xi/(2 eps) + (a/2) t^2, t = tau/(2 eps^2).
struct LabDensity {
  std::vector<double> t;
  std::vector<double> x;
  std::vector<std::vector<double>> density;  // [t][x]
};

/// Linear interpolation in xi. The default x grid spans the mapped run columns; density
/// outside the simulated window is zero.
LabDensity lab_frame_density(const TdseRun& run, const TrapParams& params);
LabDensity lab_frame_density(const TdseRun& run, const TrapParams& params,
                             const std::vector<double>& x);

/// |resonance mode|^2 e^{-2 E_I tau} on the run's snapshot grid, normalized to unit
/// norm inside the trap window at tau = 0.
std::vector<std::vector<double>> analytic_mode_density(const TdseRun& run);

/// Relative L2 distance between the simulated and analytic densities inside the trap
/// window, after normalizing both to the trap norm of each snapshot.
double mode_discrepancy(const TdseRun& run);

}  // namespace airytrap
