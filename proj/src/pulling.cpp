#include "airytrap/pulling.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "airytrap/errors.hpp"
#include "airytrap/frames.hpp"
#include "resonance_newton.hpp"

namespace airytrap {
namespace {

using std::numbers::pi;

constexpr double kWeakSeedLimit = 0.3;
constexpr double kStrongSeedLimit = 3.0;
// Largest ratio between consecutive fields on a continuation path.
constexpr double kContinuationRatio = 1.15;

void check_range(double field) {
  if (!(field >= kPullingMinField && field <= kPullingMaxField)) {
    std::ostringstream msg;
    msg << "pulling resonance supports " << kPullingMinField << " <= F <= " << kPullingMaxField
        << ", got " << field;
    throw DomainError(msg.str());
  }
}

Complex weak_seed(double field) {
  return 0.25 * std::pow(field, -2.0 / 3.0) * Complex(1.0, std::exp(-1.0 / (6.0 * field)));
}

Complex strong_seed(double field) {
  return std::pow(4.0, -2.0 / 3.0) * std::polar(1.0, 2.0 * pi / 3.0) * std::log(field);
}

}  // namespace

const char* to_string(Seed s) {
  switch (s) {
    case Seed::weak_field:
      return "weak_field";
    case Seed::strong_field:
      return "strong_field";
    case Seed::continuation:
      return "continuation";
    case Seed::user:
      return "user";
  }
  return "unknown";
}

double pulling_residual(Complex zeta0, double field) {
  return std::abs(detail::outgoing_condition(zeta0, std::cbrt(field), nullptr));
}

ResonanceSolution solve_pulling_from(double field, Complex zeta0_seed, Seed tag) {
  check_range(field);
  const auto r = detail::newton_outgoing(zeta0_seed, std::cbrt(field), kRootTolerance);
  ResonanceSolution s;
  s.field = field;
  s.zeta0 = r.root;
  s.energy = -std::pow(field, 2.0 / 3.0) * r.root;
  s.residual = r.residual;
  s.iterations = r.iterations;
  s.seed_used = tag;
  if (s.energy.imag() > 1e-12) {
    std::ostringstream msg;
    msg << "root at F = " << field << " has Im E = " << s.energy.imag()
        << " > 0 (growing branch)";
    throw BranchError(msg.str());
  }
  return s;
}

ResonanceSolution continue_pulling(const ResonanceSolution& from, double field) {
  check_range(field);
  const double span = std::log(field / from.field);
  const int steps = std::max(1, static_cast<int>(std::ceil(std::abs(span) / std::log(kContinuationRatio))));
  ResonanceSolution prev = from;
  Complex prev_zeta = from.zeta0;
  double prev_log = std::log(from.field);
  bool have_two = false;
  Complex older_zeta;
  double older_log = 0.0;
  for (int k = 1; k <= steps; ++k) {
    const double log_f = std::log(from.field) + span * k / steps;
    const double f = k == steps ? field : std::exp(log_f);
    // Linear extrapolation in log F once two points are known.
    Complex seed = prev_zeta;
    if (have_two) seed += (prev_zeta - older_zeta) * ((log_f - prev_log) / (prev_log - older_log));
    ResonanceSolution next = solve_pulling_from(f, seed, Seed::continuation);
    older_zeta = prev_zeta;
    older_log = prev_log;
    prev_zeta = next.zeta0;
    prev_log = log_f;
    have_two = true;
    prev = next;
  }
  prev.seed_used = Seed::continuation;
  return prev;
}

ResonanceSolution solve_pulling(double field) {
  check_range(field);
  if (field <= kWeakSeedLimit) return solve_pulling_from(field, weak_seed(field), Seed::weak_field);
  if (field >= kStrongSeedLimit) {
    return solve_pulling_from(field, strong_seed(field), Seed::strong_field);
  }
  const ResonanceSolution start =
      solve_pulling_from(kWeakSeedLimit, weak_seed(kWeakSeedLimit), Seed::weak_field);
  return continue_pulling(start, field);
}

std::vector<ResonanceSolution> pulling_sweep(double f_min, double f_max, int n) {
  if (n < 1) throw ConfigError("sweep needs at least one point");
  if (!(f_min <= f_max)) throw ConfigError("sweep needs f_min <= f_max");
  check_range(f_min);
  check_range(f_max);
  std::vector<ResonanceSolution> out;
  out.reserve(n);
  for (int k = 0; k < n; ++k) {
    const double f = n == 1 ? f_min : f_min * std::pow(f_max / f_min, static_cast<double>(k) / (n - 1));
    if (out.empty()) {
      out.push_back(solve_pulling(f));
    } else {
      out.push_back(continue_pulling(out.back(), f));
    }
  }
  return out;
}

Complex weak_field_energy(double field) {
  if (!(field > 0.0)) throw DomainError("weak_field_energy needs F > 0");
  return -0.25 * Complex(1.0, std::exp(-1.0 / (6.0 * field)));
}

Complex strong_field_energy(double field) {
  if (!(field > 0.0)) throw DomainError("strong_field_energy needs F > 0");
  return -std::pow(field / 4.0, 2.0 / 3.0) * std::log(field) * Complex(-1.0, std::sqrt(3.0)) / 2.0;
}

DecayMetrics decay_metrics(const ResonanceSolution& solution, double epsilon, double accel) {
  if (!(epsilon > 0.0)) throw DomainError("decay_metrics needs epsilon > 0");
  if (!(accel >= 0.0)) throw DomainError("decay_metrics needs accel >= 0");
  DecayMetrics m;
  m.epsilon = epsilon;
  m.accel = accel;
  const double inf = std::numeric_limits<double>::infinity();
  if (accel == 0.0) {
    m.lifetime_scaled = m.vmax_scaled = m.lifetime_weak = m.vmax_weak = inf;
    m.vmax_strong = std::numeric_limits<double>::quiet_NaN();
    return m;
  }
  const double field = field_strength(epsilon, accel);
  if (std::abs(field - solution.field) > 1e-6 * solution.field) {
    std::ostringstream msg;
    msg << "epsilon = " << epsilon << ", a = " << accel << " give F = " << field
        << " but the root was solved at F = " << solution.field;
    throw DomainError(msg.str());
  }
  const double e_i = solution.decay_constant();
  if (!(e_i > 0.0)) throw DomainError("decay_metrics needs a decaying root (E_I > 0)");
  m.decay_rate = 2.0 * e_i;
  m.lifetime_scaled = 1.0 / (4.0 * e_i * epsilon * epsilon);
  m.vmax_scaled = accel * m.lifetime_scaled;
  const double growth = std::exp(2.0 * epsilon * epsilon * epsilon / (3.0 * accel));
  m.lifetime_weak = growth / (epsilon * epsilon);
  m.vmax_weak = accel * m.lifetime_weak;
  m.vmax_strong = field > 1.0 ? 2.0 * epsilon * std::cbrt(16.0 * field) / (std::sqrt(3.0) * std::log(field))
                              : std::numeric_limits<double>::quiet_NaN();
  return m;
}

DecayMetrics decay_metrics(const ResonanceSolution& solution, double epsilon) {
  return decay_metrics(solution, epsilon, trap_from_field(epsilon, solution.field).accel);
}

double survival_probability(double t, const ResonanceSolution& solution, double epsilon) {
  if (!(t >= 0.0)) throw DomainError("survival_probability needs t >= 0");
  return std::exp(-4.0 * solution.decay_constant() * epsilon * epsilon * t);
}

double survival_probability_weak(double t, double epsilon, double accel) {
  if (!(t >= 0.0)) throw DomainError("survival_probability_weak needs t >= 0");
  if (!(epsilon > 0.0 && accel > 0.0)) throw DomainError("needs epsilon > 0 and accel > 0");
  return std::exp(-epsilon * epsilon * t * std::exp(-2.0 * epsilon * epsilon * epsilon / (3.0 * accel)));
}

WavefunctionProfile pulling_profile(const ResonanceSolution& solution, const GridSpec& grid) {
  const Complex i(0.0, 1.0);
  const AiryQuad at0 = airy_eval(solution.zeta0);
  const Complex right0 = at0.ai, left0 = at0.bi + i * at0.ai;
  WavefunctionProfile p;
  p.scenario = Scenario::pulling;
  p.field = solution.field;
  p.energy = solution.energy;
  p.grid = make_grid(grid, true);
  p.values.resize(p.grid.size());
  for (std::size_t k = 0; k < p.grid.size(); ++k) {
    const double xi = p.grid[k];
    if (xi == 0.0) {
      p.values[k] = 1.0;
      continue;
    }
    const Complex z = zeta_of_xi(xi, solution.energy, solution.field);
    if (xi > 0.0) {
      p.values[k] = airy_ai(z).ai / right0;
    } else {
      const AiryQuad q = airy_eval(z);
      p.values[k] = (q.bi + i * q.ai) / left0;
    }
  }
  return p;
}

Complex pulling_derivative_jump(const ResonanceSolution& solution) {
  const Complex i(0.0, 1.0);
  const AiryQuad q = airy_eval(solution.zeta0);
  const Complex right = q.ai_prime / q.ai;
  const Complex left = (q.bi_prime + i * q.ai_prime) / (q.bi + i * q.ai);
  return std::cbrt(solution.field) * (right - left);
}

}  // namespace airytrap
