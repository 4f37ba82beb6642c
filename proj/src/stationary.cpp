#include "airytrap/stationary.hpp"

#include <boost/math/tools/roots.hpp>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "airytrap/errors.hpp"
#include "airytrap/frames.hpp"

namespace airytrap {
namespace {

using std::numbers::pi;

struct RealAiry {
  double ai, aip, bi, bip;
};

RealAiry real_airy(double z) {
  const AiryQuad q = airy_eval(Complex(z, 0.0));
  return {q.ai.real(), q.ai_prime.real(), q.bi.real(), q.bi_prime.real()};
}

void check_field(double field) {
  if (!(field > 0.0) || !std::isfinite(field)) throw DomainError("field must be positive");
}

// Tail bracket written as (a^2 + b^2) / (pi Ai^2) with
//   a = 1 - pi Ai Bi / c,  b = (pi / c) Ai^2,  c = F^{1/3},
// which stays representable where 1/Ai itself overflows.
struct Tail {
  double a;        // first term is (a / Ai)^2
  double log_b;    // log of b; second term is (b / Ai)^2
  double log_ai;   // log |Ai(z0)|
  double log_sum;  // log(a^2 + b^2)
  double dlog_dz;  // d log I / d zeta0
  double a_z;      // d a / d zeta0
  double ai_ratio; // Ai'/Ai
};

Tail tail_at(double zeta0, double field) {
  const RealAiry f = real_airy(zeta0);
  if (std::abs(f.ai) <= 1e-300) throw SingularError("Ai(zeta0) underflows; tail undefined");
  const double c = std::cbrt(field);
  Tail t{};
  t.a = 1.0 - pi * f.ai * f.bi / c;
  t.log_ai = std::log(std::abs(f.ai));
  t.log_b = std::log(pi / c) + 2.0 * t.log_ai;
  const double la = t.a == 0.0 ? -std::numeric_limits<double>::infinity() : std::log(std::abs(t.a));
  const double top = std::max(la, t.log_b);
  t.log_sum = 2.0 * top + std::log1p(std::exp(-2.0 * std::abs(la - t.log_b)));
  t.a_z = -pi / c * (f.aip * f.bi + f.ai * f.bip);
  t.ai_ratio = f.aip / f.ai;
  // share of b^2 in a^2 + b^2, and a / (a^2 + b^2)
  const double rho = 1.0 / (1.0 + std::exp(2.0 * (la - t.log_b)));
  const double ta = std::copysign(std::exp(la - t.log_sum), t.a);
  t.dlog_dz = 2.0 * ta * t.a_z + 4.0 * rho * t.ai_ratio - 2.0 * t.ai_ratio;
  return t;
}

// Ai has zeros only on the negative axis; for zeta0 > 0 it is merely small.
void check_pole(const RealAiry& f, double zeta0) {
  if (zeta0 < 0.0 && std::abs(f.ai) <= 1e-12) {
    std::ostringstream msg;
    msg << "Ai(zeta0) vanishes at zeta0 = " << zeta0;
    throw SingularError(msg.str());
  }
}

double zeta0_of(double energy, double field) { return -energy * std::pow(field, -2.0 / 3.0); }

double log_tail_of(const Tail& t) { return t.log_sum - std::log(pi) - 2.0 * t.log_ai; }

// Energy window: the nominal bracket, trimmed where zeta0 would leave the range in
// which Ai(zeta0) is representable.
constexpr double kMaxZeta0 = 100.0;

std::pair<double, double> energy_window(double field) {
  const double lo = std::max(-0.5, -kMaxZeta0 * std::pow(field, 2.0 / 3.0));
  return {lo, -0.05};
}

double first_term(double energy, double field) {
  const RealAiry f = real_airy(zeta0_of(energy, field));
  return 1.0 - pi * f.ai * f.bi / std::cbrt(field);
}

double solve_bracket(auto fn, double lo, double hi) {
  std::uintmax_t iters = 200;
  const auto r = boost::math::tools::toms748_solve(fn, lo, hi,
                                                   boost::math::tools::eps_tolerance<double>(52),
                                                   iters);
  if (iters >= 200) throw ConvergenceError("bracketed root search did not converge");
  return 0.5 * (r.first + r.second);
}

}  // namespace

double matching_coefficient(double zeta0, double field) {
  check_field(field);
  const RealAiry f = real_airy(zeta0);
  check_pole(f, zeta0);
  const double c = (std::cbrt(field) / (pi * f.ai) - f.bi) / f.ai;
  if (!std::isfinite(c)) throw DomainError("matching coefficient overflows binary64");
  return c;
}

TailTerms tail_terms(double zeta0, double field) {
  check_field(field);
  const RealAiry f = real_airy(zeta0);
  check_pole(f, zeta0);
  const double k = pi / std::cbrt(field);
  const double first = 1.0 / f.ai - k * f.bi;
  const double second = k * f.ai;
  return {first * first, second * second};
}

double tail_intensity(double zeta0, double field) {
  return std::exp(log_tail_intensity(zeta0, field));
}

double log_tail_intensity(double zeta0, double field) {
  check_field(field);
  check_pole(real_airy(zeta0), zeta0);
  return log_tail_of(tail_at(zeta0, field));
}

double tail_envelope(double zeta) {
  if (!(zeta < 0.0)) throw DomainError("tail_envelope needs zeta < 0");
  return 1.0 / std::sqrt(-zeta);
}

double first_term_root_energy(double field) {
  check_field(field);
  const auto [lo, hi] = energy_window(field);
  constexpr int kSamples = 400;
  double best = std::numeric_limits<double>::quiet_NaN();
  double prev_e = lo, prev_v = first_term(lo, field);
  for (int k = 1; k <= kSamples; ++k) {
    const double e = lo + (hi - lo) * k / kSamples;
    const double v = first_term(e, field);
    if ((prev_v < 0.0) != (v < 0.0) || v == 0.0) {
      const double root =
          v == 0.0 ? e : solve_bracket([&](double x) { return first_term(x, field); }, prev_e, e);
      if (std::isnan(best) || std::abs(root + 0.25) < std::abs(best + 0.25)) best = root;
    }
    prev_e = e;
    prev_v = v;
  }
  if (std::isnan(best)) {
    std::ostringstream msg;
    msg << "first tail term has no root in [" << lo << ", " << hi << "] at F = " << field;
    throw ConvergenceError(msg.str());
  }
  return best;
}

StationaryState resonance_energy(double field) {
  if (!(field >= kStationaryMinField && field <= kStationaryMaxField)) {
    std::ostringstream msg;
    msg << "resonance_energy supports " << kStationaryMinField << " <= F <= "
        << kStationaryMaxField << ", got " << field;
    throw DomainError(msg.str());
  }
  const auto [lo, hi] = energy_window(field);
  const double scale = std::pow(field, -2.0 / 3.0);  // d zeta0 / d(-E)
  auto dlog_de = [&](double e) { return -scale * tail_at(zeta0_of(e, field), field).dlog_dz; };

  // The minimum sits in a dip around the root of the first term; the dip width
  // is b / |da/dE|.
  const double root = first_term_root_energy(field);
  const Tail at_root = tail_at(zeta0_of(root, field), field);
  const double slope = std::abs(scale * at_root.a_z);
  const double background = -scale * at_root.dlog_dz;  // d log I / dE at the root
  const double log_width = at_root.log_b - std::log(slope);

  StationaryState s;
  s.field = field;
  s.first_term_root = root;

  if (log_width < std::log(1e-6)) {
    // The dip is too narrow for the first term to be resolved in binary64 near its
    // root. Use the local model log(A^2 x^2 + b^2) + D x with A = da/dE and D the
    // slope at the root; its minimum is x = -D b^2 / (2 A^2) to relative order D^2 b^2 / A^2.
    const double da_de = -scale * at_root.a_z;
    const double ratio = std::exp(2.0 * log_width);
    const double x = -background * ratio /
                     (1.0 + std::sqrt(std::max(0.0, 1.0 - background * background * ratio)));
    const double b = std::exp(at_root.log_b);
    s.energy = root + x;
    s.zeta0 = zeta0_of(s.energy, field);
    // There a ~ A x, so a / b = -D b / (2A), and c = F^{1/3} a / (pi Ai^2) = a / b.
    const double a_over_b = -background * b / (2.0 * da_de);
    s.first_over_second = a_over_b * a_over_b;
    s.coeff_c = a_over_b;
    s.log_tail_intensity = 2.0 * at_root.log_b + std::log1p(s.first_over_second) -
                           std::log(pi) - 2.0 * at_root.log_ai;
    s.tail_intensity = std::exp(s.log_tail_intensity);
    s.log_derivative = 0.0;
    return s;
  }

  // Walk downhill from the root until the derivative changes sign, then refine.
  const double direction = background > 0.0 ? -1.0 : 1.0;
  double w = std::exp(log_width);
  double far = root;
  bool bracketed = false;
  for (int k = 0; k < 200; ++k) {
    far = root + direction * w;
    if (far <= lo || far >= hi) break;
    const double d = dlog_de(far);
    if ((direction < 0.0 && d < 0.0) || (direction > 0.0 && d > 0.0)) {
      bracketed = true;
      break;
    }
    w *= 1.5;
  }
  if (!bracketed) {
    std::ostringstream msg;
    msg << "no interior minimum of the tail intensity in [" << lo << ", " << hi
        << "] at F = " << field;
    throw ConvergenceError(msg.str());
  }
  s.energy = solve_bracket(dlog_de, std::min(root, far), std::max(root, far));
  s.zeta0 = zeta0_of(s.energy, field);
  const Tail t = tail_at(s.zeta0, field);
  s.log_tail_intensity = log_tail_of(t);
  s.tail_intensity = std::exp(s.log_tail_intensity);
  s.coeff_c = matching_coefficient(s.zeta0, field);
  s.first_over_second = t.a == 0.0 ? 0.0 : std::exp(2.0 * (std::log(std::abs(t.a)) - t.log_b));
  s.log_derivative = -scale * t.dlog_dz;
  return s;
}

namespace {

void fill_grid(WavefunctionProfile& p, const GridSpec& grid) {
  p.grid = make_grid(grid, true);
  p.values.resize(p.grid.size());
}

}  // namespace

WavefunctionProfile quasi_bound_profile(double field, const GridSpec& grid) {
  const StationaryState s = resonance_energy(field);
  WavefunctionProfile p;
  p.scenario = Scenario::stationary;
  p.field = field;
  p.energy = s.energy;
  fill_grid(p, grid);
  const RealAiry at0 = real_airy(s.zeta0);
  for (std::size_t k = 0; k < p.grid.size(); ++k) {
    const double xi = p.grid[k];
    if (xi == 0.0) {
      p.values[k] = 1.0;
      continue;
    }
    const RealAiry f = real_airy(zeta_of_xi(xi, s.energy, field).real());
    p.values[k] = xi > 0.0 ? f.ai / at0.ai : f.bi / at0.bi;
  }
  return p;
}

WavefunctionProfile compound_profile(double energy, double field, const GridSpec& grid) {
  const double z0 = zeta0_of(energy, field);
  const double c = matching_coefficient(z0, field);
  const RealAiry at0 = real_airy(z0);
  WavefunctionProfile p;
  p.scenario = Scenario::stationary;
  p.field = field;
  p.energy = energy;
  fill_grid(p, grid);
  for (std::size_t k = 0; k < p.grid.size(); ++k) {
    const double xi = p.grid[k];
    if (xi == 0.0) {
      p.values[k] = 1.0;
      continue;
    }
    const RealAiry f = real_airy(zeta_of_xi(xi, energy, field).real());
    p.values[k] = xi > 0.0 ? f.ai / at0.ai : (f.bi + c * f.ai) / (at0.bi + c * at0.ai);
  }
  return p;
}

double compound_derivative_jump(double energy, double field) {
  const double z0 = zeta0_of(energy, field);
  const double c = matching_coefficient(z0, field);
  const RealAiry f = real_airy(z0);
  const double right = f.aip / f.ai;
  const double left = (f.bip + c * f.aip) / (f.bi + c * f.ai);
  return std::cbrt(field) * (right - left);
}

}  // namespace airytrap
