#include "airytrap/tdse.hpp"

#include <algorithm>
#include <boost/math/tools/roots.hpp>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#if defined(__SSE2__)
#include <xmmintrin.h>
#include <pmmintrin.h>
#endif

#include "airytrap/errors.hpp"
#include "airytrap/pulling.hpp"
#include "airytrap/pushing.hpp"

namespace airytrap {
namespace {

using std::numbers::pi;

constexpr Complex kI(0.0, 1.0);

// Fronts entering an empty region pass through subnormal magnitudes, which are two
// orders of magnitude slower on x86; flush them for the duration of a run.
class FlushDenormals {
 public:
#if defined(__SSE2__)
  FlushDenormals() : saved_(_mm_getcsr()) { _mm_setcsr(saved_ | 0x8040); }
  ~FlushDenormals() { _mm_setcsr(saved_); }

 private:
  unsigned saved_;
#endif
};

double spacing(const TdseConfig& c) { return (c.xi_max - c.xi_min) / (c.n_points - 1); }

// Unit-mass Gaussian sampled on the nodes j*h, |j| <= support.
std::vector<double> gaussian_weights(double width, double h, int& support) {
  support = static_cast<int>(std::ceil(10.0 * width / h));
  std::vector<double> g(support + 1);
  double sum = 0.0;
  for (int j = 0; j <= support; ++j) {
    const double x = j * h / width;
    g[j] = std::exp(-0.5 * x * x);
    sum += (j == 0 ? 1.0 : 2.0) * g[j];
  }
  for (double& v : g) v /= sum * h;
  return g;
}

// Even-parity shooting residual of -d^2 phi + V phi = E phi, V = -strength * g, integrated
// inward from an exterior that decays (or, for the barrier condition, grows) outward.
double shooting_residual(double energy, double strength, double h, const std::vector<double>& g,
                         bool growing = false) {
  const int m = static_cast<int>(g.size()) - 1;
  const double s = 2.0 - energy * h * h;
  double lambda = 0.5 * (s - std::sqrt(s * s - 4.0));
  if (growing) lambda = 1.0 / lambda;
  double next = lambda, cur = 1.0;
  for (int j = m; j >= 1; --j) {
    const double prev = (2.0 + h * h * (-strength * g[j] - energy)) * cur - next;
    next = cur;
    cur = prev;
    const double scale = std::max(std::abs(cur), std::abs(next));
    if (scale > 1e100) {
      cur /= scale;
      next /= scale;
    }
  }
  const double r = (2.0 + h * h * (-strength * g[0] - energy)) * cur - 2.0 * next;
  return r / std::max(std::abs(cur), std::abs(next));
}

template <class F>
double bracket_root(F f, double lo, double hi, const char* what) {
  const double flo = f(lo), fhi = f(hi);
  if (!(flo * fhi < 0.0)) {
    std::ostringstream msg;
    msg << what << ": no sign change on [" << lo << ", " << hi << "]";
    throw ConvergenceError(msg.str());
  }
  std::uintmax_t iters = 200;
  auto tol = boost::math::tools::eps_tolerance<double>(50);
  const auto r = boost::math::tools::toms748_solve(f, lo, hi, flo, fhi, tol, iters);
  return 0.5 * (r.first + r.second);
}

double trapezoid_window(const std::vector<double>& x, const std::vector<Complex>& phi, int i0,
                        int i1) {
  double s = 0.0;
  for (int j = i0; j < i1; ++j) s += 0.5 * (std::norm(phi[j]) + std::norm(phi[j + 1])) * (x[j + 1] - x[j]);
  return s;
}

void normalize(WavefunctionProfile& p) {
  const double n = grid_norm(p.grid, p.values);
  if (!(n > 0.0)) throw DomainError("initial state has zero norm on this grid");
  const double s = 1.0 / std::sqrt(n);
  for (auto& v : p.values) v *= s;
}

}  // namespace

std::string to_string(InitialState s) {
  switch (s) {
    case InitialState::bound_state: return "bound_state";
    case InitialState::hard_wall_state: return "hard_wall_state";
    case InitialState::custom: return "custom";
  }
  return "unknown";
}

InitialState initial_state_from_string(const std::string& name) {
  if (name == "bound_state") return InitialState::bound_state;
  if (name == "hard_wall_state") return InitialState::hard_wall_state;
  if (name == "custom") return InitialState::custom;
  throw ConfigError("unknown initial state '" + name + "'");
}

TdseConfig pulling_figure_config() { return TdseConfig{}; }

TdseConfig pushing_figure_config() {
  TdseConfig c;
  c.scenario = Scenario::pushing;
  c.field = 0.06;
  c.initial = InitialState::hard_wall_state;
  return c;
}

void validate(const TdseConfig& c) {
  auto fail = [](const std::string& m) { throw ConfigError(m); };
  if (c.scenario == Scenario::stationary) fail("tdse scenario must be pulling or pushing");
  if (!(c.field >= 0.0) || !std::isfinite(c.field)) fail("tdse field must be finite and >= 0");
  if (!(c.epsilon > 0.0)) fail("tdse epsilon must be > 0");
  if (c.n_points < 3) fail("tdse n_points must be >= 3");
  if (!(c.xi_max > c.xi_min)) fail("tdse xi_max must exceed xi_min");
  if (!(c.dt > 0.0) || !(c.t_final > 0.0)) fail("tdse dt and t_final must be > 0");
  if (c.snapshot_stride < 1 || c.xi_stride < 0) fail("tdse strides must be positive");
  const double h = spacing(c);
  const double origin = -c.xi_min / h;
  if (c.xi_min > 0.0 || c.xi_max < 0.0 || std::abs(origin - std::round(origin)) > 1e-6)
    fail("tdse grid must contain xi = 0 as a node");
  if (!(c.delta_width >= 3.0 * h * (1.0 - 1e-12))) {
    std::ostringstream m;
    m << "tdse delta_width " << c.delta_width << " must be >= 3 dxi = " << 3.0 * h;
    fail(m.str());
  }
  if (c.use_cap) {
    if (!(c.cap_width > 0.0) || !(c.cap_width_right > 0.0) || !(c.cap_strength > 0.0))
      fail("tdse CAP widths and strength must be > 0");
    const double left_end = c.xi_min + c.cap_width, right_start = c.xi_max - c.cap_width_right;
    if (!(left_end < right_start)) fail("tdse CAP layers overlap");
    if (!(left_end < -c.trap_halfwidth) || !(right_start > c.trap_halfwidth))
      fail("tdse CAP layers must stay clear of the trap window");
  }
  if (c.scenario == Scenario::pulling && !(c.trap_halfwidth > 0.0))
    fail("tdse trap_halfwidth must be > 0");
  // Fastest wave: kinetic energy gained down the slope to the left edge, plus the
  // bound-state scale.
  const double k = std::sqrt(c.field * std::max(0.0, -c.xi_min) + 1.0);
  if (k * h > 1.0) {
    std::ostringstream m;
    m << "tdse grid too coarse: k dxi = " << k * h << " > 1 for k = " << k;
    fail(m.str());
  }
  if (k * k * c.dt > 1.0) {
    std::ostringstream m;
    m << "tdse dt too large: k^2 dt = " << k * k * c.dt << " > 1 for k = " << k;
    fail(m.str());
  }
  if (c.initial == InitialState::custom && static_cast<int>(c.custom_initial.size()) != c.n_points)
    fail("tdse custom initial state must have n_points values");
}

std::vector<double> tdse_grid(const TdseConfig& c) {
  std::vector<double> x(c.n_points);
  const double h = spacing(c);
  const long origin = std::lround(-c.xi_min / h);
  for (int j = 0; j < c.n_points; ++j) x[j] = (j - origin) * h;
  x.front() = c.xi_min;
  x.back() = c.xi_max;
  return x;
}

WavefunctionProfile initial_bound_state(const std::vector<double>& grid) {
  if (grid.empty() || grid.front() > -20.0 || grid.back() < 20.0)
    throw DomainError("initial_bound_state needs a grid covering [-20, 20]");
  WavefunctionProfile p;
  p.scenario = Scenario::pulling;
  p.energy = Complex(-0.25, 0.0);
  p.grid = grid;
  p.values.resize(grid.size());
  for (std::size_t j = 0; j < grid.size(); ++j)
    p.values[j] = std::exp(-0.5 * std::abs(grid[j])) / std::sqrt(2.0);
  normalize(p);
  return p;
}

WavefunctionProfile initial_hard_wall_state(double field, const std::vector<double>& grid) {
  if (!(field > 0.0)) throw DomainError("initial_hard_wall_state needs F > 0");
  if (grid.empty() || grid.back() <= 0.0)
    throw DomainError("initial_hard_wall_state needs grid points with xi > 0");
  const double c = std::cbrt(field), a1 = ai_zero(1);
  WavefunctionProfile p;
  p.scenario = Scenario::pushing;
  p.field = field;
  p.energy = Complex(hard_wall_energy(field), 0.0);
  p.grid = grid;
  p.values.assign(grid.size(), Complex(0.0, 0.0));
  const double norm = hard_wall_norm(field);
  for (std::size_t j = 0; j < grid.size(); ++j)
    if (grid[j] > 0.0) p.values[j] = norm * airy_ai_real(c * grid[j] + a1);
  normalize(p);
  return p;
}

double discrete_ground_energy(double width, double dxi, double strength) {
  int support = 0;
  const auto g = gaussian_weights(width, dxi, support);
  const double floor = -strength * g[0];
  return bracket_root([&](double e) { return shooting_residual(e, strength, dxi, g); },
                      floor * (1.0 - 1e-12), -1e-10, "discrete_ground_energy");
}

double calibrated_delta_strength(double width, double dxi, bool repulsive) {
  if (!(width > 0.0) || !(dxi > 0.0)) throw DomainError("delta calibration needs w, dxi > 0");
  int support = 0;
  const auto g = gaussian_weights(width, dxi, support);
  if (!repulsive)
    return bracket_root([&](double s) { return shooting_residual(-0.25, s, dxi, g); }, 0.2, 5.0,
                        "calibrated_delta_strength");
  // A unit point barrier makes e^{|xi|/2} the even solution at E = -1/4.
  return bracket_root([&](double s) { return shooting_residual(-0.25, -s, dxi, g, true); }, 0.2,
                      5.0, "calibrated_delta_strength");
}

TdseRun evolve(const TdseConfig& config) {
  validate(config);
  const FlushDenormals flush;
  const TdseConfig& c = config;
  const int n = c.n_points;
  const double h = spacing(c);
  const std::vector<double> x = tdse_grid(c);
  const int origin = static_cast<int>(std::lround(-c.xi_min / h));

  TdseRun run;
  run.config = c;
  run.delta_strength =
      c.calibrate_delta
          ? calibrated_delta_strength(c.delta_width, h, c.scenario == Scenario::pushing)
          : 1.0;

  int support = 0;
  const auto g = gaussian_weights(c.delta_width, h, support);
  const double sign = c.scenario == Scenario::pulling ? -1.0 : 1.0;

  std::vector<Complex> v(n);
  for (int j = 0; j < n; ++j) {
    double re = c.field * x[j];
    const int k = std::abs(j - origin);
    if (k <= support) re += sign * run.delta_strength * g[k];
    double im = 0.0;
    if (c.use_cap) {
      const double dl = (c.xi_min + c.cap_width - x[j]) / c.cap_width;
      const double dr = (x[j] - (c.xi_max - c.cap_width_right)) / c.cap_width_right;
      if (dl > 0.0) im -= c.cap_strength * dl * dl * dl;
      if (dr > 0.0) im -= c.cap_strength * dr * dr * dr;
    }
    v[j] = Complex(re, im);
  }

  // (1 + i dt H/2) phi' = (1 - i dt H/2) phi with H = -d^2 + V, Dirichlet ends.
  const Complex off = -kI * c.dt / (2.0 * h * h);
  std::vector<Complex> diag_a(n), diag_b(n), cprime(n), inv(n);
  for (int j = 0; j < n; ++j) {
    const Complex hd = 2.0 / (h * h) + v[j];
    diag_a[j] = 1.0 + kI * 0.5 * c.dt * hd;
    diag_b[j] = 1.0 - kI * 0.5 * c.dt * hd;
  }
  inv[0] = 1.0 / diag_a[0];
  cprime[0] = off * inv[0];
  for (int j = 1; j < n; ++j) {
    inv[j] = 1.0 / (diag_a[j] - off * cprime[j - 1]);
    cprime[j] = off * inv[j];
  }

  std::vector<Complex> phi;
  switch (c.initial) {
    case InitialState::bound_state: phi = initial_bound_state(x).values; break;
    case InitialState::hard_wall_state: phi = initial_hard_wall_state(c.field, x).values; break;
    case InitialState::custom: phi = c.custom_initial; break;
  }

  int i0 = 0, i1 = n - 1;
  if (c.scenario == Scenario::pulling) {
    while (x[i0] < -c.trap_halfwidth) ++i0;
    while (x[i1] > c.trap_halfwidth) --i1;
  } else {
    i0 = origin;
  }

  const int xs = c.xi_stride > 0 ? c.xi_stride : std::max(1, (n + 1199) / 1200);
  for (int j = 0; j < n; j += xs) run.snapshot_xi.push_back(x[j]);
  auto snapshot = [&](double tau) {
    run.snapshot_tau.push_back(tau);
    std::vector<double> row;
    row.reserve(run.snapshot_xi.size());
    for (int j = 0; j < n; j += xs) row.push_back(std::norm(phi[j]));
    run.density.push_back(std::move(row));
  };
  auto total = [&] {
    double s = 0.0;
    for (const auto& p : phi) s += std::norm(p);
    return s * h;
  };

  const long steps = std::lround(c.t_final / c.dt);
  run.norm_in_trap.reserve(steps + 1);
  run.total_norm.reserve(steps + 1);
  run.norm_in_trap.emplace_back(0.0, trapezoid_window(x, phi, i0, i1));
  run.total_norm.push_back(total());
  snapshot(0.0);

  std::vector<Complex> rhs(n);
  for (long step = 1; step <= steps; ++step) {
    rhs[0] = diag_b[0] * phi[0] - off * phi[1];
    for (int j = 1; j < n - 1; ++j) rhs[j] = diag_b[j] * phi[j] - off * (phi[j - 1] + phi[j + 1]);
    rhs[n - 1] = diag_b[n - 1] * phi[n - 1] - off * phi[n - 2];
    phi[0] = rhs[0] * inv[0];
    for (int j = 1; j < n; ++j) phi[j] = (rhs[j] - off * phi[j - 1]) * inv[j];
    for (int j = n - 2; j >= 0; --j) phi[j] -= cprime[j] * phi[j + 1];

    const double tau = step * c.dt;
    const double norm = total();
    if (!std::isfinite(norm) || norm > run.total_norm.back() + 1e-6) {
      std::ostringstream m;
      m << "norm grew from " << run.total_norm.back() << " to " << norm << " at tau = " << tau;
      throw StabilityError(m.str());
    }
    run.total_norm.push_back(norm);
    run.norm_in_trap.emplace_back(tau, trapezoid_window(x, phi, i0, i1));
    if (step % c.snapshot_stride == 0) snapshot(tau);
  }
  run.final_state = phi;

  run.fitted_gamma = std::numeric_limits<double>::quiet_NaN();
  try {
    const DecayFit fit = fit_decay_rate(run);
    run.fit_window = fit.window;
    run.fit_r2 = fit.r2;
    if (fit.r2 >= 0.99) run.fitted_gamma = fit.gamma;
  } catch (const FitError&) {
  }
  return run;
}

DecayFit fit_decay_rate(const std::vector<std::pair<double, double>>& samples, double tau1,
                        double tau2) {
  if (!(tau2 > tau1)) throw FitError("fit window must have tau2 > tau1");
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0, syy = 0.0;
  int m = 0;
  double last = std::numeric_limits<double>::infinity();
  for (const auto& [tau, p] : samples) {
    if (tau < tau1 || tau > tau2) continue;
    if (!(p > 0.0)) throw FitError("P must stay positive inside the fit window");
    if (p > last + 1e-6) {
      std::ostringstream msg;
      msg << "P rises from " << last << " to " << p << " at tau = " << tau;
      throw FitError(msg.str());
    }
    last = p;
    const double y = std::log(p);
    sx += tau;
    sy += y;
    sxx += tau * tau;
    sxy += tau * y;
    syy += y * y;
    ++m;
  }
  if (m < 3) throw FitError("fewer than 3 samples inside the fit window");
  const double vx = sxx - sx * sx / m, vy = syy - sy * sy / m, cxy = sxy - sx * sy / m;
  if (!(vx > 0.0)) throw FitError("degenerate fit window");
  DecayFit fit;
  fit.gamma = -cxy / vx;
  fit.r2 = vy > 0.0 ? cxy * cxy / (vx * vy) : 1.0;
  fit.window = {tau1, tau2};
  return fit;
}

DecayFit fit_decay_rate(const TdseRun& run, double tau1, double tau2) {
  if (run.norm_in_trap.empty()) throw FitError("run has no samples");
  if (tau1 < run.norm_in_trap.front().first || tau2 > run.norm_in_trap.back().first + 1e-9)
    throw FitError("fit window lies outside the run");
  return fit_decay_rate(run.norm_in_trap, tau1, tau2);
}

DecayFit fit_decay_rate(const TdseRun& run) {
  if (run.norm_in_trap.empty()) throw FitError("run has no samples");
  const double p0 = run.norm_in_trap.front().second;
  for (const auto& [tau, p] : run.norm_in_trap)
    if (p < 0.95 * p0) return fit_decay_rate(run, tau, run.norm_in_trap.back().first);
  throw FitError("P never drops below 0.95 of its initial value");
}

LabDensity lab_frame_density(const TdseRun& run, const TrapParams& params) {
  const double eps = run.config.epsilon;
  double lo = std::numeric_limits<double>::infinity(), hi = -lo;
  for (double tau : run.snapshot_tau) {
    const double t = t_of_tau(tau, eps);
    lo = std::min(lo, lab_x(run.snapshot_xi.front(), t, params));
    hi = std::max(hi, lab_x(run.snapshot_xi.back(), t, params));
  }
  const std::size_t m = run.snapshot_xi.size();
  std::vector<double> x(m);
  if (params.accel == 0.0) {
    for (std::size_t j = 0; j < m; ++j) x[j] = lab_x(run.snapshot_xi[j], 0.0, params);
  } else {
    for (std::size_t j = 0; j < m; ++j) x[j] = lo + (hi - lo) * j / (m - 1);
  }
  return lab_frame_density(run, params, x);
}

LabDensity lab_frame_density(const TdseRun& run, const TrapParams& params,
                             const std::vector<double>& x) {
  const double eps = run.config.epsilon;
  const auto& xi = run.snapshot_xi;
  LabDensity out;
  out.x = x;
  for (std::size_t s = 0; s < run.snapshot_tau.size(); ++s) {
    const double t = t_of_tau(run.snapshot_tau[s], eps);
    out.t.push_back(t);
    const double shift = 0.5 * params.accel * t * t;
    std::vector<double> row(x.size(), 0.0);
    for (std::size_t j = 0; j < x.size(); ++j) {
      const double q = 2.0 * eps * (x[j] - shift);
      if (q < xi.front() || q > xi.back()) continue;
      auto it = std::upper_bound(xi.begin(), xi.end(), q);
      std::size_t k = it == xi.end() ? xi.size() - 1 : static_cast<std::size_t>(it - xi.begin());
      if (k == 0) k = 1;
      const double w = (q - xi[k - 1]) / (xi[k] - xi[k - 1]);
      row[j] = (1.0 - w) * run.density[s][k - 1] + w * run.density[s][k];
    }
    out.density.push_back(std::move(row));
  }
  return out;
}

namespace {

struct Mode {
  std::vector<double> base;  // |profile|^2 at the snapshot columns
  double rate = 0.0;         // 2 E_I
};

Mode resonance_mode(const TdseRun& run) {
  const auto& c = run.config;
  const auto& xi = run.snapshot_xi;
  GridSpec spec{xi.front(), xi.back(), static_cast<int>(xi.size())};
  WavefunctionProfile p;
  Mode mode;
  if (c.scenario == Scenario::pulling) {
    const auto sol = solve_pulling(c.field);
    p = pulling_profile(sol, spec);
    mode.rate = 2.0 * sol.decay_constant();
  } else {
    const auto st = solve_pushing(c.field);
    p = pushing_profile(st, spec);
    mode.rate = 2.0 * st.decay_constant();
  }
  // The profile grid may carry an inserted origin node; sample it back onto xi.
  mode.base.resize(xi.size());
  for (std::size_t j = 0; j < xi.size(); ++j) {
    auto it = std::lower_bound(p.grid.begin(), p.grid.end(), xi[j] - 1e-12);
    mode.base[j] = std::norm(p.values[static_cast<std::size_t>(it - p.grid.begin())]);
  }
  return mode;
}

bool in_window(const TdseConfig& c, double xi) {
  return c.scenario == Scenario::pulling ? std::abs(xi) <= c.trap_halfwidth : xi >= 0.0;
}

double window_sum(const TdseConfig& c, const std::vector<double>& xi, const std::vector<double>& d) {
  double s = 0.0;
  for (std::size_t j = 0; j < xi.size(); ++j)
    if (in_window(c, xi[j])) s += d[j];
  return s;
}

}  // namespace

std::vector<std::vector<double>> analytic_mode_density(const TdseRun& run) {
  const Mode mode = resonance_mode(run);
  const double s0 = window_sum(run.config, run.snapshot_xi, mode.base);
  const double dx = run.snapshot_xi.size() > 1 ? run.snapshot_xi[1] - run.snapshot_xi[0] : 1.0;
  std::vector<std::vector<double>> out;
  for (double tau : run.snapshot_tau) {
    const double f = std::exp(-mode.rate * tau) / (s0 * dx);
    std::vector<double> row(mode.base.size());
    for (std::size_t j = 0; j < row.size(); ++j) row[j] = mode.base[j] * f;
    out.push_back(std::move(row));
  }
  return out;
}

double mode_discrepancy(const TdseRun& run) {
  const auto& c = run.config;
  const auto& xi = run.snapshot_xi;
  const Mode mode = resonance_mode(run);
  const double sm = window_sum(c, xi, mode.base);
  double num = 0.0, den = 0.0;
  for (const auto& row : run.density) {
    const double sr = window_sum(c, xi, row);
    if (!(sr > 0.0)) continue;
    for (std::size_t j = 0; j < xi.size(); ++j) {
      if (!in_window(c, xi[j])) continue;
      const double a = row[j] / sr, b = mode.base[j] / sm;
      num += (a - b) * (a - b);
      den += b * b;
    }
  }
  return std::sqrt(num / den);
}

}  // namespace airytrap
