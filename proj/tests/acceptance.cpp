// Acceptance gate: one PASS/FAIL line per criterion, tolerances pinned below.
// Usage: acceptance [criterion ...]   (no arguments runs all twelve)

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "airytrap/airy.hpp"
#include "airytrap/errors.hpp"
#include "airytrap/frames.hpp"
#include "airytrap/pulling.hpp"
#include "airytrap/pushing.hpp"
#include "airytrap/stationary.hpp"
#include "airytrap/tdse.hpp"

using namespace airytrap;
using Clock = std::chrono::steady_clock;

namespace {

constexpr double pi = std::numbers::pi;
constexpr double kFirstZero = -2.33811;

struct Outcome {
  bool pass = false;
  std::string detail;
};

struct Criterion {
  int id;
  const char* name;
  double time_limit_s;
  std::function<Outcome()> run;
};

std::string fmt(const char* f, auto... v) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, v...);
  return buf;
}

double rel(double got, double want) { return std::abs(got - want) / std::abs(want); }

Outcome airy_first_zero() {
  const double z = ai_zero(1);
  return {std::abs(z - kFirstZero) <= 1e-4, fmt("ai_zero(1) = %.8f, target -2.33811 +- 1e-4", z)};
}

Outcome wronskian_grid() {
  int points = 0;
  double worst = 0.0;
  auto visit = [&](std::complex<double> z) {
    const auto q = airy_eval(z);
    worst = std::max(worst, std::abs(q.ai * q.bi_prime - q.ai_prime * q.bi - 1.0 / pi));
    ++points;
  };
  for (int k = 0; k < 200; ++k) visit({-20.0 + 40.0 * k / 199.0, 0.0});
  for (double s : {1.0, -1.0}) {
    for (int k = 1; k <= 75; ++k) visit(std::polar(20.0 * k / 75.0, s * pi / 3.0));
    for (int k = 1; k <= 75; ++k) visit(std::polar(4.5 * k / 75.0, s * 2.0 * pi / 3.0));
  }
  return {points == 500 && worst <= 1e-10,
          fmt("%d points, max |W - 1/pi| = %.3e, limit 1e-10", points, worst)};
}

Outcome stationary_shift() {
  const double f = 0.05;
  const auto s = resonance_energy(f);
  const double want = -5.0 * f * f;
  const double err = std::abs((s.energy + 0.25) - want) / std::abs(want);
  return {err <= 0.2, fmt("E = %.10f, E + 1/4 = %.4e vs -5F^2 = %.4e, rel %.3f, limit 0.2", s.energy,
                          s.energy + 0.25, want, err)};
}

Outcome pulling_weak_field() {
  bool ok = true;
  std::ostringstream d;
  for (double f : {0.05, 0.06, 0.08}) {
    const auto r = solve_pulling(f);
    const auto w = weak_field_energy(f);
    const double ei = rel(r.energy.imag(), w.imag());
    const double er = rel(r.energy.real(), -0.25);
    ok = ok && ei <= 0.10 && er <= 0.01;
    d << fmt("F=%.2f: ImE %.4e vs %.4e (rel %.3f), ReE %.5f (rel %.3f); ", f, r.energy.imag(),
             w.imag(), ei, r.energy.real(), er);
  }
  d << "limits 0.10 / 0.01";
  return {ok, d.str()};
}

Outcome pulling_sweep_structure() {
  // 1/F in [1, 25]
  const auto sweep = pulling_sweep(1.0 / 25.0, 1.0, 120);
  bool re_up = true, re_down = true, im_up = true, im_down = true;
  for (std::size_t k = 1; k < sweep.size(); ++k) {
    const double dr = sweep[k].energy.real() - sweep[k - 1].energy.real();
    const double di = std::abs(sweep[k].energy.imag()) - std::abs(sweep[k - 1].energy.imag());
    re_up = re_up && dr >= 0.0;
    re_down = re_down && dr <= 0.0;
    im_up = im_up && di >= 0.0;
    im_down = im_down && di <= 0.0;
  }
  double worst = 0.0;
  for (const auto& s : sweep) {
    if (1.0 / s.field < 12.0 - 1e-9) continue;
    const double w = std::abs(weak_field_energy(s.field).imag());
    worst = std::max(worst, rel(w, std::abs(s.energy.imag())));
  }
  const bool re_mono = re_up || re_down, im_mono = im_up || im_down;
  return {re_mono && im_mono && worst <= 0.10,
          fmt("Re E monotone: %s, |Im E| monotone: %s, worst overlay rel for 1/F >= 12: %.3f, "
              "limit 0.10",
              re_mono ? "yes" : "no", im_mono ? "yes" : "no", worst)};
}

Outcome pushing_hard_wall() {
  const double f = 0.005;
  const auto s = solve_pushing(f);
  const double hw = 2.33811 * std::cbrt(f * f);
  const double er = rel(s.energy.real(), hw);
  const double n1 = hard_wall_norm(1.0);
  return {er <= 0.02 && std::abs(n1 - 1.4261) <= 0.002,
          fmt("Re E(0.005) = %.6e vs 2.33811 F^(2/3) = %.6e (rel %.4f, limit 0.02); N(1) = %.7f, "
              "target 1.4261 +- 0.002",
              s.energy.real(), hw, er, n1)};
}

Outcome pushing_expansion() {
  const auto fit = fit_expansion(0.002, 0.02, 19);
  return {std::abs(fit.gamma - 1.534) <= 0.05,
          fmt("gamma = %.5f over F in [0.002, 0.02] (%d points), target 1.534 +- 0.05; "
              "intercept of the two-term fit %.4f",
              fit.gamma, fit.points, fit.gamma_intercept)};
}

Outcome coefficient_chain() {
  const double f = 0.04;
  const auto n0 = n0_coefficient(solve_pushing(f));
  const double got = std::abs(n0.exact), want = 2.2 * std::sqrt(f);
  const double e = rel(got, want);
  return {e <= 0.10, fmt("|N0| = %.5f vs 2.2 F^(1/2) = %.5f, rel %.3f, limit 0.10", got, want, e)};
}

TdseConfig halved(TdseConfig c) {
  c.n_points = 2 * (c.n_points - 1) + 1;
  c.dt *= 0.5;
  c.snapshot_stride *= 2;
  return c;
}

Outcome tdse_pulling() {
  const auto base = pulling_figure_config();
  const double ref = 2.0 * solve_pulling(base.field).decay_constant();
  const double g1 = fit_decay_rate(evolve(base)).gamma;
  const double g2 = fit_decay_rate(evolve(halved(base))).gamma;
  const double e = rel(g1, ref), shift = rel(g2, g1);
  return {e <= 0.10 && shift <= 0.02,
          fmt("fitted %.6e vs 2|Im E| = %.6e (rel %.4f, limit 0.10); halved dt and dxi: %.6e "
              "(shift %.5f, limit 0.02)",
              g1, ref, e, g2, shift)};
}

Outcome tdse_pushing() {
  const auto c = pushing_figure_config();
  const double ref = 2.0 * solve_pushing(c.field).decay_constant();
  const double g = fit_decay_rate(evolve(c)).gamma;
  const double e = rel(g, ref);
  return {e <= 0.15, fmt("fitted %.6e vs 2|Im E| = %.6e, rel %.4f, limit 0.15", g, ref, e)};
}

Outcome stationarity() {
  TdseConfig c;
  c.field = 0.0;
  c.xi_min = -30.0;
  c.xi_max = 30.0;
  c.n_points = 90001;
  c.delta_width = 0.002;
  c.cap_width = 10.0;
  c.cap_width_right = 10.0;
  c.t_final = 50.0;
  c.snapshot_stride = 500;
  c.xi_stride = 1;
  const auto r = evolve(c);
  double drift = 0.0;
  for (const auto& row : r.density)
    for (std::size_t j = 0; j < row.size(); ++j)
      drift = std::max(drift, std::abs(std::sqrt(row[j]) - std::sqrt(r.density.front()[j])));
  return {drift <= 1e-3,
          fmt("max ||phi(tau)| - |phi(0)|| over tau <= 50 = %.3e, limit 1e-3", drift)};
}

Outcome physical_estimates() {
  const double eps = 1.0, a = 2.0 / 3.0;
  const auto p = trap_from_accel(eps, a);
  const auto m = decay_metrics(solve_pulling(p.field), eps, a);
  const auto sc = rubidium_scaling();
  const double v = to_physical(sc, Quantity::vmax, m.vmax_scaled).value;
  const double g = to_physical(sc, Quantity::accel, a).value / kStandardGravity;
  const bool ok = v >= 1.0 / 3.0 && v <= 3.0 && std::abs(std::log10(g) - 8.0) <= 1.0;
  return {ok, fmt("F = %.5f, v_max = %.3f m/s (limit [1/3, 3]), accel = %.3e g "
                  "(limit |log10 - 8| <= 1)",
                  p.field, v, g)};
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> all = {
      {1, "Airy first zero", 1.0, airy_first_zero},
      {2, "Wronskian suite", 5.0, wronskian_grid},
      {3, "Stationary resonance shift", 10.0, stationary_shift},
      {4, "Pulling weak field", 10.0, pulling_weak_field},
      {5, "Pulling sweep structure", 30.0, pulling_sweep_structure},
      {6, "Pushing hard-wall limit", 10.0, pushing_hard_wall},
      {7, "Pushing expansion", 30.0, pushing_expansion},
      {8, "Coefficient chain", 5.0, coefficient_chain},
      {9, "TDSE pulling cross-check", 600.0, tdse_pulling},
      {10, "TDSE pushing cross-check", 600.0, tdse_pushing},
      {11, "Stationarity control", 120.0, stationarity},
      {12, "Physical estimates", 1.0, physical_estimates},
  };
  std::vector<int> wanted;
  for (int i = 1; i < argc; ++i) wanted.push_back(std::atoi(argv[i]));

  int failed = 0, ran = 0;
  for (const auto& c : all) {
    if (!wanted.empty() && std::find(wanted.begin(), wanted.end(), c.id) == wanted.end()) continue;
    ++ran;
    const auto t0 = Clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("threw: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
    const bool pass = o.pass && secs < c.time_limit_s;
    if (!pass) ++failed;
    std::printf("[%s] %2d %s: %s; runtime %.2f s (limit %g s)\n", pass ? "PASS" : "FAIL", c.id,
                c.name, o.detail.c_str(), secs, c.time_limit_s);
    std::fflush(stdout);
  }
  std::printf("%d/%d criteria passed\n", ran - failed, ran);
  return failed == 0 ? 0 : 1;
}
