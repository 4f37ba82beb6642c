#include "airytrap/pushing.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "airytrap/errors.hpp"
#include "airytrap/frames.hpp"
#include "airytrap/pulling.hpp"
#include "resonance_newton.hpp"

namespace airytrap {
namespace {

using std::numbers::pi;

void check_range(double field) {
  if (!(field >= kPushingMinField && field <= kPushingMaxField)) {
    std::ostringstream msg;
    msg << "pushing resonance supports " << kPushingMinField << " <= F <= " << kPushingMaxField
        << " (decay is too fast to define a pushed state beyond), got " << field;
    throw DomainError(msg.str());
  }
}

}  // namespace

double hard_wall_energy(double field) {
  if (!(field >= 0.0)) throw DomainError("hard_wall_energy needs F >= 0");
  return -ai_zero(1) * std::pow(field, 2.0 / 3.0);
}

double hard_wall_integral() {
  static const double value = [] {
    const double a1 = ai_zero(1);
    double error = 0.0;
    // Ai^2 is below 1e-190 beyond t = 30.
    const double integral = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(
        [](double t) {
          const double a = airy_ai_real(t);
          return a * a;
        },
        a1, 30.0, 15, 1e-14, &error);
    if (!(error <= 1e-10 * integral)) {
      std::ostringstream msg;
      msg << "hard-wall normalization integral did not converge (error " << error << ")";
      throw QuadratureError(msg.str());
    }
    return integral;
  }();
  return value;
}

double hard_wall_norm(double field) {
  if (!(field > 0.0)) throw DomainError("hard_wall_norm needs F > 0");
  return std::pow(field, 1.0 / 6.0) / std::sqrt(hard_wall_integral());
}

PushedState solve_pushing(double field) {
  check_range(field);
  const double c = std::cbrt(field);
  const Complex seed(ai_zero(1) + c, kPushingGammaSeed * c * c);
  const auto r = detail::newton_outgoing(seed, -c, kRootTolerance);
  PushedState s;
  s.field = field;
  s.zeta0 = r.root;
  s.energy = -c * c * r.root;
  s.residual = r.residual;
  s.iterations = r.iterations;
  if (s.energy.imag() > 1e-12) {
    std::ostringstream msg;
    msg << "pushing root at F = " << field << " has Im E = " << s.energy.imag() << " > 0";
    throw BranchError(msg.str());
  }
  s.norm_N = hard_wall_norm(field);
  const AiryQuad q = airy_eval(s.zeta0);
  s.coeff_N0 = s.norm_N * q.ai / (q.bi + Complex(0.0, 1.0) * q.ai);
  return s;
}

std::vector<PushedState> pushing_sweep(double f_min, double f_max, int n) {
  if (n < 1) throw ConfigError("sweep needs at least one point");
  if (!(f_min <= f_max)) throw ConfigError("sweep needs f_min <= f_max");
  check_range(f_min);
  check_range(f_max);
  std::vector<PushedState> out;
  out.reserve(n);
  for (int k = 0; k < n; ++k) {
    const double f = n == 1 ? f_min : f_min * std::pow(f_max / f_min, static_cast<double>(k) / (n - 1));
    out.push_back(solve_pushing(f));
  }
  return out;
}

N0Forms n0_coefficient(const PushedState& state) {
  const AiryQuad q = airy_eval(state.zeta0);
  const double c = std::cbrt(state.field);
  N0Forms f;
  f.exact = state.norm_N * q.ai / (q.bi + Complex(0.0, 1.0) * q.ai);
  f.bi_squared = -c * state.norm_N / (pi * q.bi * q.bi);
  f.coefficient_chain = -1.544 * c * state.norm_N;
  f.closed = -2.2 * std::sqrt(state.field);
  return f;
}

PushingMetrics pushing_metrics(const PushedState& state, double epsilon, double accel,
                               double gamma) {
  if (!(epsilon > 0.0)) throw DomainError("pushing_metrics needs |epsilon| > 0");
  if (!(accel >= 0.0)) throw DomainError("pushing_metrics needs accel >= 0");
  PushingMetrics m;
  m.epsilon = epsilon;
  m.accel = accel;
  const double inf = std::numeric_limits<double>::infinity();
  if (accel == 0.0) {
    m.lifetime_scaled = m.vmax_scaled = m.lifetime_closed = m.vmax_closed = inf;
    return m;
  }
  const double field = field_strength(epsilon, accel);
  if (std::abs(field - state.field) > 1e-6 * state.field) {
    std::ostringstream msg;
    msg << "|epsilon| = " << epsilon << ", a = " << accel << " give F = " << field
        << " but the state was solved at F = " << state.field;
    throw DomainError(msg.str());
  }
  const double e_i = state.decay_constant();
  if (!(e_i > 0.0)) throw DomainError("pushing_metrics needs a decaying state (E_I > 0)");
  m.decay_rate = 2.0 * e_i;
  m.decay_rate_lab = 4.0 * e_i * epsilon * epsilon;
  m.lifetime_scaled = 1.0 / m.decay_rate_lab;
  m.vmax_scaled = accel * m.lifetime_scaled;
  m.decay_rate_lab_closed = std::pow(4.0, -1.0 / 3.0) * gamma / (epsilon * epsilon) *
                            std::pow(accel, 4.0 / 3.0);
  m.lifetime_closed = 1.0 / m.decay_rate_lab_closed;
  m.vmax_closed = epsilon * epsilon / gamma * std::pow(accel / 4.0, -1.0 / 3.0);
  return m;
}

WavefunctionProfile pushing_profile(const PushedState& state, const GridSpec& grid) {
  const Complex i(0.0, 1.0);
  WavefunctionProfile p;
  p.scenario = Scenario::pushing;
  p.field = state.field;
  p.energy = state.energy;
  p.grid = make_grid(grid, true);
  p.values.resize(p.grid.size());
  for (std::size_t k = 0; k < p.grid.size(); ++k) {
    const double xi = p.grid[k];
    const Complex z = zeta_of_xi(xi, state.energy, state.field);
    if (xi >= 0.0) {
      p.values[k] = state.norm_N * airy_ai(z).ai;
    } else {
      const AiryQuad q = airy_eval(z);
      p.values[k] = state.coeff_N0 * (q.bi + i * q.ai);
    }
  }
  return p;
}

Complex pushing_derivative_jump(const PushedState& state) {
  const Complex i(0.0, 1.0);
  const AiryQuad q = airy_eval(state.zeta0);
  const Complex right = state.norm_N * q.ai_prime;
  const Complex left = state.coeff_N0 * (q.bi_prime + i * q.ai_prime);
  return std::cbrt(state.field) * (right - left);
}

ExpansionFit fit_expansion(double f_min, double f_max, int n) {
  if (n < 2) throw FitError("expansion fit needs at least two fields");
  const double a1 = ai_zero(1);
  double sxx = 0.0, sxy = 0.0, cxx = 0.0, cxy = 0.0;
  // Two-parameter fit y = g0 + g1 u with y = Im zeta0 / F^{2/3}, u = F^{1/3}.
  double su = 0.0, sy = 0.0, suu = 0.0, suy = 0.0;
  for (const auto& s : pushing_sweep(f_min, f_max, n)) {
    const double x = std::pow(s.field, 2.0 / 3.0);
    const double u = std::cbrt(s.field);
    sxx += x * x;
    sxy += x * s.zeta0.imag();
    cxx += u * u;
    cxy += u * (s.zeta0.real() - a1);
    const double y = s.zeta0.imag() / x;
    su += u;
    sy += y;
    suu += u * u;
    suy += u * y;
  }
  ExpansionFit fit;
  fit.points = n;
  fit.gamma = sxy / sxx;
  fit.shift_coefficient = cxy / cxx;
  const double det = n * suu - su * su;
  if (det <= 0.0) throw FitError("degenerate field sample");
  fit.gamma_intercept = (suu * sy - su * suy) / det;
  return fit;
}

}  // namespace airytrap
