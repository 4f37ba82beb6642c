#pragma once

#include <vector>

#include "airytrap/profile.hpp"

namespace airytrap {

enum class Seed { weak_field, strong_field, continuation, user };
const char* to_string(Seed s);

/// Complex resonance of the accelerated attractive trap.
///
/// Sign convention: modes evolve as exp(-i E tau), so decay means Im E < 0.
/// The positive decay constant E_I is stored separately as -Im E.
struct ResonanceSolution {
  double field = 0.0;
  Complex zeta0;
  Complex energy;  // -F^{2/3} zeta0
  double residual = 0.0;
  int iterations = 0;
  Seed seed_used = Seed::user;

  double decay_constant() const { return -energy.imag(); }
};

inline constexpr double kPullingMinField = 1e-3;
inline constexpr double kPullingMaxField = 10.0;
inline constexpr double kRootTolerance = 1e-10;

/// Root of pi Ai(z0) [Bi(z0) + i Ai(z0)] = F^{1/3} on the decaying branch.
/// Seeds: weak-field closed form for F <= 0.3, strong-field log form for F >= 3,
/// continuation from F = 0.3 in between.
/// Throws DomainError outside [1e-3, 10], ConvergenceError (with the iterate trace)
/// after 100 Newton steps, BranchError if the root has Im E > 1e-12.
ResonanceSolution solve_pulling(double field);

/// Newton from an explicit seed for zeta0.
ResonanceSolution solve_pulling_from(double field, Complex zeta0_seed, Seed tag = Seed::user);

/// Tracks a solved root to a new field in small logarithmic steps.
ResonanceSolution continue_pulling(const ResonanceSolution& from, double field);

/// Roots on n log-spaced fields from f_min to f_max, solved by continuation
/// from the weak-field end.
std::vector<ResonanceSolution> pulling_sweep(double f_min, double f_max, int n);

/// Residual |pi Ai(z0)[Bi(z0) + i Ai(z0)] - F^{1/3}|.
double pulling_residual(Complex zeta0, double field);

/// -(1/4)[1 + i exp(-1/(6F))]. Meaningful for F below about 0.15.
Complex weak_field_energy(double field);

/// -(F/4)^{2/3} ln(F) (i sqrt3 - 1)/2, the decaying large-F branch.
/// Leading-log accuracy only; meaningful for F of a few and above.
Complex strong_field_energy(double field);

/// Lifetime and terminal velocity in laboratory (scaled) units.
struct DecayMetrics {
  double epsilon = 0.0;
  double accel = 0.0;
  double decay_rate = 0.0;       // Gamma = 2 E_I, in tau units
  double lifetime_scaled = 0.0;  // T = 1/(4 E_I eps^2)
  double vmax_scaled = 0.0;      // a T
  double lifetime_weak = 0.0;    // eps^{-2} exp(2 eps^3 / 3a)
  double vmax_weak = 0.0;        // a eps^{-2} exp(2 eps^3 / 3a)
  double vmax_strong = 0.0;      // 2 eps (16F)^{1/3} / (sqrt3 ln F), F > 1 only (else NaN)
};

/// Metrics for a solved root. accel must reproduce the root's field through
/// F = 2a/(2 eps)^3 (relative 1e-6), except accel = 0, which returns the
/// infinite-lifetime sentinel (T = v_max = +inf).
/// DomainError for eps <= 0, inconsistent accel, or E_I <= 0.
DecayMetrics decay_metrics(const ResonanceSolution& solution, double epsilon, double accel);

/// Same with accel derived from the root's field.
DecayMetrics decay_metrics(const ResonanceSolution& solution, double epsilon);

/// exp(-4 E_I eps^2 t), the probability of remaining trapped at laboratory time t.
double survival_probability(double t, const ResonanceSolution& solution, double epsilon);

/// Weak-field form exp[-eps^2 t exp(-2 eps^3 / 3a)], consistent with E_I = exp(-1/6F)/4.
double survival_probability_weak(double t, double epsilon, double accel);

/// Ai(zeta)/Ai(zeta0) right of the trap, [Bi + i Ai](zeta)/[Bi + i Ai](zeta0) left of it.
WavefunctionProfile pulling_profile(const ResonanceSolution& solution, const GridSpec& grid);

/// phi'(0+) - phi'(0-) for the mode; equals -phi(0) = -1 at a root.
Complex pulling_derivative_jump(const ResonanceSolution& solution);

}  // namespace airytrap
