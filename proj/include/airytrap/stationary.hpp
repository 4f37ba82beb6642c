#pragma once

#include "airytrap/profile.hpp"

namespace airytrap {

/// Least-delocalized stationary state at one field strength.
struct StationaryState {
  double field = 0.0;
  double energy = 0.0;
  double zeta0 = 0.0;          // -energy * field^{-2/3}
  double coeff_c = 0.0;        // matching coefficient of the compound solution
  double tail_intensity = 0.0; // bracket of the tail density, may underflow to 0
  double log_tail_intensity = 0.0;
  double first_term_root = 0.0;   // energy where the first bracket term vanishes
  double first_over_second = 0.0; // ratio of the two bracket terms at `energy`
  double log_derivative = 0.0;    // d log I / dE at `energy`
};

/// Supported field range for resonance_energy.
inline constexpr double kStationaryMinField = 2e-4;
inline constexpr double kStationaryMaxField = 0.2;

/// c = [F^{1/3}/(pi Ai(z0)) - Bi(z0)] / Ai(z0). SingularError if |Ai(z0)| <= 1e-12.
double matching_coefficient(double zeta0, double field);

/// The two squared terms inside the tail bracket:
/// first = [1/Ai(z0) - (pi/F^{1/3}) Bi(z0)]^2, second = [(pi/F^{1/3}) Ai(z0)]^2.
struct TailTerms {
  double first = 0.0;
  double second = 0.0;
};
TailTerms tail_terms(double zeta0, double field);

/// (first + second) / pi. The far-field factor 1/sqrt(-zeta) of the averaged
/// density is left out; see tail_envelope.
double tail_intensity(double zeta0, double field);

/// log of tail_intensity, finite even where the intensity itself over- or underflows.
double log_tail_intensity(double zeta0, double field);

/// Far-field factor 1/sqrt(-zeta) multiplying the bracket at coordinate zeta < 0.
double tail_envelope(double zeta);

/// Energy minimizing the tail bracket over E in [-0.5, -0.05].
/// DomainError for field outside [kStationaryMinField, kStationaryMaxField],
/// ConvergenceError if no interior minimum is found.
StationaryState resonance_energy(double field);

/// Root of the first bracket term nearest E = -1/4, i.e. 1/Ai(z0) = (pi/F^{1/3}) Bi(z0).
double first_term_root_energy(double field);

/// Ai(zeta)/Ai(zeta0) right of the trap, Bi(zeta)/Bi(zeta0) left of it, at the resonance energy.
WavefunctionProfile quasi_bound_profile(double field, const GridSpec& grid);

/// General compound solution at real energy E with the matching coefficient c:
/// Ai(zeta)/Ai(zeta0) right, [Bi(zeta) + c Ai(zeta)]/[Bi(zeta0) + c Ai(zeta0)] left.
WavefunctionProfile compound_profile(double energy, double field, const GridSpec& grid);

/// phi'(0+) - phi'(0-) of compound_profile, from the analytic branch derivatives.
double compound_derivative_jump(double energy, double field);

}  // namespace airytrap
