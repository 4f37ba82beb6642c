#include "airytrap/frames.hpp"

#include <cmath>

#include "airytrap/errors.hpp"

namespace airytrap {

double field_strength(double epsilon, double accel) {
  if (!(epsilon > 0.0)) throw DomainError("field_strength: epsilon must be positive");
  if (!(accel >= 0.0)) throw DomainError("field_strength: acceleration must be non-negative");
  const double width = 2.0 * epsilon;
  return 2.0 * accel / (width * width * width);
}

TrapParams trap_from_accel(double epsilon, double accel) {
  return {epsilon, accel, field_strength(epsilon, accel)};
}

TrapParams trap_from_field(double epsilon, double field) {
  if (!(epsilon > 0.0)) throw DomainError("trap_from_field: epsilon must be positive");
  if (!(field >= 0.0)) throw DomainError("trap_from_field: field must be non-negative");
  const double width = 2.0 * epsilon;
  return {epsilon, 0.5 * field * width * width * width, field};
}

Complex zeta_of_xi(double xi, Complex energy, double field) {
  if (!(field > 0.0)) throw DomainError("zeta_of_xi: field must be positive");
  return std::cbrt(field) * (xi - energy / field);
}

Complex energy_of_zeta0(Complex zeta0, double field) {
  return -std::pow(field, 2.0 / 3.0) * zeta0;
}

double tau_of_t(double t, double epsilon) { return 2.0 * epsilon * epsilon * t; }
double t_of_tau(double tau, double epsilon) { return tau / (2.0 * epsilon * epsilon); }

double lab_x(double xi, double t, const TrapParams& params) {
  return xi / (2.0 * params.epsilon) + 0.5 * params.accel * t * t;
}

WavefunctionProfile comoving_to_lab(const WavefunctionProfile& profile, double t,
                                    const TrapParams& params) {
  if (profile.frame != Frame::comoving) throw ConfigError("profile is already in the lab frame");
  if (!(params.epsilon > 0.0)) throw DomainError("comoving_to_lab: epsilon must be positive");
  if (profile.grid.size() != profile.values.size()) {
    throw ConfigError("comoving_to_lab: grid and values differ in length");
  }
  WavefunctionProfile out = profile;
  out.frame = Frame::lab;
  out.t = t;
  out.tau = tau_of_t(t, params.epsilon);
  const double a = params.accel;
  for (std::size_t k = 0; k < profile.grid.size(); ++k) {
    const double x = lab_x(profile.grid[k], t, params);
    out.grid[k] = x;
    out.values[k] = profile.values[k] * std::polar(1.0, a * x * t - a * a * t * t * t / 3.0);
  }
  return out;
}

PhysicalScaling rubidium_scaling() { return {}; }

PhysicalScaling optical_scaling() {
  PhysicalScaling s;
  s.x0 = 1e-6;
  s.t0 = 1e-5;
  // A 1 um stripe with index contrast ~1e-3; the depth is quoted as an index change.
  s.well_depth = 1e-3;
  s.well_width = 1e-6;
  s.preset = Preset::optical_beam;
  s.time_is_distance = true;
  return s;
}

PhysicalScaling custom_scaling(double x0, double t0, double well_depth, double well_width) {
  if (!(x0 > 0.0 && t0 > 0.0 && well_depth > 0.0 && well_width > 0.0)) {
    throw DomainError("custom scaling entries must all be positive");
  }
  return {x0, t0, well_depth, well_width, Preset::custom, false};
}

PhysicalScaling scaling_from_preset(const std::string& name) {
  if (name == "rubidium" || name == "rubidium_atom") return rubidium_scaling();
  if (name == "optical" || name == "optical_beam") return optical_scaling();
  throw ConfigError("unknown scaling preset '" + name + "'");
}

std::string to_string(Preset p) {
  switch (p) {
    case Preset::rubidium_atom:
      return "rubidium_atom";
    case Preset::optical_beam:
      return "optical_beam";
    case Preset::custom:
      return "custom";
  }
  return "unknown";
}

Quantity quantity_from_string(const std::string& name) {
  if (name == "lifetime") return Quantity::lifetime;
  if (name == "vmax") return Quantity::vmax;
  if (name == "energy") return Quantity::energy;
  if (name == "accel") return Quantity::accel;
  throw ConfigError("unknown physical quantity '" + name + "'");
}

namespace {

struct Factor {
  double factor;
  const char* unit;
};

Factor unit_factor(const PhysicalScaling& s, Quantity q) {
  if (!(s.x0 > 0.0 && s.t0 > 0.0 && s.well_depth > 0.0 && s.well_width > 0.0)) {
    throw DomainError("physical scaling entries must all be positive");
  }
  switch (q) {
    case Quantity::lifetime:
      return {s.t0, s.time_is_distance ? "m" : "s"};
    case Quantity::vmax:
      // For a beam this is a transverse drift per unit propagation length: a slope.
      return {s.x0 / s.t0, s.time_is_distance ? "rad" : "m/s"};
    case Quantity::energy:
      if (s.time_is_distance) {
        throw DomainError("energy has no physical counterpart when time is a propagation length");
      }
      return {kHbarEvSeconds / s.t0, "eV"};
    case Quantity::accel:
      return {s.x0 / (s.t0 * s.t0), s.time_is_distance ? "1/m" : "m/s^2"};
  }
  throw DomainError("unknown quantity");
}

}  // namespace

PhysicalValue to_physical(const PhysicalScaling& scaling, Quantity quantity, double value) {
  const Factor f = unit_factor(scaling, quantity);
  return {value * f.factor, f.unit};
}

double from_physical(const PhysicalScaling& scaling, Quantity quantity, double value) {
  return value / unit_factor(scaling, quantity).factor;
}

double epsilon_from_well(const PhysicalScaling& scaling) {
  if (scaling.time_is_distance) {
    throw DomainError("epsilon_from_well applies to the matter-wave unit systems only");
  }
  unit_factor(scaling, Quantity::lifetime);
  return scaling.t0 * scaling.well_depth * scaling.well_width / (kHbarEvSeconds * scaling.x0);
}

}  // namespace airytrap
