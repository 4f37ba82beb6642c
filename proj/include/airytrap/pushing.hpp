#pragma once

#include <vector>

#include "airytrap/profile.hpp"

namespace airytrap {

/// Resonance of the accelerated repulsive barrier, normalized on the hard-wall state.
struct PushedState {
  double field = 0.0;
  Complex zeta0;
  Complex energy;   // -F^{2/3} zeta0, Im < 0 for decay
  double norm_N = 0.0;
  Complex coeff_N0;  // left amplitude, N Ai(z0) / [Bi(z0) + i Ai(z0)]
  double residual = 0.0;
  int iterations = 0;

  double decay_constant() const { return -energy.imag(); }
};

inline constexpr double kPushingMinField = 1e-3;
inline constexpr double kPushingMaxField = 0.3;
/// Seed coefficient for Im zeta0 ~ gamma F^{2/3}; the solver does not depend on it.
inline constexpr double kPushingGammaSeed = 1.534;

/// E = -a1 F^{2/3} with a1 the first zero of Ai.
double hard_wall_energy(double field);

/// N with N^2 F^{-1/3} * integral_{a1}^{inf} Ai^2 = 1, by adaptive Gauss-Kronrod.
/// Throws QuadratureError if the error estimate exceeds 1e-10 relative.
double hard_wall_norm(double field);

/// integral_{a1}^{inf} Ai(t)^2 dt (equals Ai'(a1)^2).
double hard_wall_integral();

/// Root of F^{1/3} + pi Ai(z0)[Bi(z0) + i Ai(z0)] = 0 near the first Airy zero.
/// DomainError outside [1e-3, 0.3], ConvergenceError, BranchError if Im E > 1e-12.
PushedState solve_pushing(double field);

/// n log-spaced fields from f_min to f_max.
std::vector<PushedState> pushing_sweep(double f_min, double f_max, int n);

/// Exact left amplitude and its successive small-F approximations.
struct N0Forms {
  Complex exact;         // N Ai(z0)/[Bi(z0) + i Ai(z0)]
  Complex bi_squared;    // -F^{1/3} N / (pi Bi(z0)^2)
  double coefficient_chain = 0.0;  // -1.544 F^{1/3} N
  double closed = 0.0;             // -2.2 F^{1/2}
};
N0Forms n0_coefficient(const PushedState& state);

/// Decay and terminal velocity, exact (from Im E) and in the small-F closed form
/// Im E = -gamma F^{4/3}.
struct PushingMetrics {
  double epsilon = 0.0;
  double accel = 0.0;
  double decay_rate = 0.0;         // 2 E_I per unit tau
  double decay_rate_lab = 0.0;     // 4 E_I eps^2 per unit t
  double lifetime_scaled = 0.0;    // 1/(4 E_I eps^2)
  double vmax_scaled = 0.0;        // a T
  double decay_rate_lab_closed = 0.0;  // 4^{-1/3} gamma eps^{-2} a^{4/3}
  double lifetime_closed = 0.0;
  double vmax_closed = 0.0;            // eps^2 gamma^{-1} (a/4)^{-1/3}
};

/// epsilon is |epsilon| of the barrier. accel = 0 gives the infinite-lifetime sentinel.
/// DomainError for epsilon <= 0, accel inconsistent with the state's F, or E_I <= 0.
PushingMetrics pushing_metrics(const PushedState& state, double epsilon, double accel,
                               double gamma = kPushingGammaSeed);

/// N Ai(zeta) right of the barrier, N0 [Bi(zeta) + i Ai(zeta)] left of it.
WavefunctionProfile pushing_profile(const PushedState& state, const GridSpec& grid);

/// phi'(0+) - phi'(0-); equals +phi(0) for the barrier.
Complex pushing_derivative_jump(const PushedState& state);

/// One-parameter fits of the small-F expansion zeta0 = a1 + k F^{1/3} + i gamma F^{2/3}.
struct ExpansionFit {
  double gamma = 0.0;           // Im zeta0 = gamma F^{2/3}, least squares
  double gamma_intercept = 0.0; // Im zeta0 / F^{2/3} = g0 + g1 F^{1/3}, value of g0
  double shift_coefficient = 0.0;  // Re zeta0 - a1 = k F^{1/3}, least squares
  int points = 0;
};
ExpansionFit fit_expansion(double f_min, double f_max, int n);

}  // namespace airytrap
