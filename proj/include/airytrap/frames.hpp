#pragma once

#include <string>

#include "airytrap/airy.hpp"
#include "airytrap/profile.hpp"

namespace airytrap {

/// Scaled model inputs. field is derived from epsilon and accel.
struct TrapParams {
  double epsilon = 0.5;
  double accel = 0.0;
  double field = 0.0;
};

/// F = 2a / (2 epsilon)^3. Throws DomainError for epsilon <= 0 or accel < 0.
double field_strength(double epsilon, double accel);

/// Builds TrapParams from epsilon and the laboratory acceleration.
TrapParams trap_from_accel(double epsilon, double accel);

/// Builds TrapParams from epsilon and F, solving F = 2a/(2 epsilon)^3 for a.
TrapParams trap_from_field(double epsilon, double field);

/// zeta = F^{1/3} (xi - E/F); at xi = 0 this is zeta0 = -E F^{-2/3}.
Complex zeta_of_xi(double xi, Complex energy, double field);

/// E = -F^{2/3} zeta0.
Complex energy_of_zeta0(Complex zeta0, double field);

double tau_of_t(double t, double epsilon);
double t_of_tau(double tau, double epsilon);

/// Laboratory position of comoving coordinate xi at laboratory time t.
double lab_x(double xi, double t, const TrapParams& params);

/// Maps a comoving profile to psi(x, t) on the matching x grid. The phase
/// exp(i a x t - i a^2 t^3 / 3) leaves |psi| = |phi| point for point.
WavefunctionProfile comoving_to_lab(const WavefunctionProfile& profile, double t,
                                    const TrapParams& params);

enum class Preset { rubidium_atom, optical_beam, custom };

/// Unit system. For the optical preset t0 is a propagation length in meters and
/// "lifetime" becomes a propagation distance.
struct PhysicalScaling {
  double x0 = 1e-9;           // m
  double t0 = 1.5e-9;         // s, or m when time_is_distance
  double well_depth = 1e-5;   // eV
  double well_width = 1e-10;  // m
  Preset preset = Preset::rubidium_atom;
  bool time_is_distance = false;
};

PhysicalScaling rubidium_scaling();
PhysicalScaling optical_scaling();
PhysicalScaling custom_scaling(double x0, double t0, double well_depth, double well_width);
PhysicalScaling scaling_from_preset(const std::string& name);
std::string to_string(Preset p);

enum class Quantity { lifetime, vmax, energy, accel };

Quantity quantity_from_string(const std::string& name);

struct PhysicalValue {
  double value = 0.0;
  std::string unit;
};

inline constexpr double kHbarEvSeconds = 6.582119569e-16;
inline constexpr double kStandardGravity = 9.80665;

/// Maps a scaled value to SI (energy in eV). Throws DomainError on non-positive
/// scaling entries, or for energy in a unit system whose time is a length.
PhysicalValue to_physical(const PhysicalScaling& scaling, Quantity quantity, double value);

/// Inverse of to_physical.
double from_physical(const PhysicalScaling& scaling, Quantity quantity, double value);

/// Scaled delta strength t0 U0 Delta / (hbar x0) implied by the well parameters.
double epsilon_from_well(const PhysicalScaling& scaling);

}  // namespace airytrap
