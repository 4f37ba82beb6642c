#include <doctest.h>

#include <cmath>

#include "airytrap/errors.hpp"
#include "airytrap/pulling.hpp"
#include "airytrap/pushing.hpp"
#include "airytrap/tdse.hpp"

using namespace airytrap;

namespace {

TdseConfig small_pulling() {
  TdseConfig c;
  c.xi_min = -150.0;
  c.n_points = 9501;
  c.t_final = 40.0;
  return c;
}

TdseConfig free_box() {
  TdseConfig c;
  c.field = 0.0;
  c.xi_min = -60.0;
  c.xi_max = 60.0;
  c.n_points = 6001;
  c.cap_width = 20.0;
  c.cap_width_right = 20.0;
  return c;
}

}  // namespace

TEST_CASE("initial bound state") {
  const auto x = tdse_grid(free_box());
  const auto p = initial_bound_state(x);
  const int o = origin_index(p.grid);
  REQUIRE(o >= 0);
  CHECK(p.values[o].real() == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-4));
  CHECK(grid_norm(p.grid, p.values) == doctest::Approx(1.0).epsilon(1e-12));
  for (int k = 1; k < 500; k += 37) CHECK(p.values[o + k] == p.values[o - k]);
  CHECK_THROWS_AS(initial_bound_state(make_grid({-10.0, 30.0, 401}, true)), DomainError);
}

TEST_CASE("initial hard-wall state") {
  const auto x = make_grid({-5.0, 15.0, 20001}, true);
  const auto p = initial_hard_wall_state(1.0, x);
  CHECK(std::abs(p.values[origin_index(x)]) == 0.0);
  CHECK(grid_norm(p.grid, p.values) == doctest::Approx(1.0).epsilon(1e-12));
  std::size_t peak = 0;
  for (std::size_t j = 0; j < x.size(); ++j)
    if (std::abs(p.values[j]) > std::abs(p.values[peak])) peak = j;
  CHECK(x[peak] == doctest::Approx(1.319).epsilon(1e-3));
  for (std::size_t j = 0; j < x.size(); ++j)
    if (x[j] <= 0.0) CHECK(p.values[j] == Complex(0.0, 0.0));
  CHECK_THROWS_AS(initial_hard_wall_state(0.0, x), DomainError);
}

TEST_CASE("regularized delta calibration") {
  for (double w : {0.12, 0.06, 0.03}) {
    CAPTURE(w);
    const double g = calibrated_delta_strength(w, 0.01);
    CHECK(discrete_ground_energy(w, 0.01, g) == doctest::Approx(-0.25).epsilon(1e-9));
    // Smoothing the cusp weakens the well and strengthens the barrier.
    CHECK(g > 1.0);
    CHECK(calibrated_delta_strength(w, 0.01, true) < 1.0);
    CHECK(std::abs(g - 1.0) < 0.6 * w + 0.01);
  }
  // The narrow limit needs no correction: the uncalibrated gate is met at 1%.
  CHECK(discrete_ground_energy(0.015, 0.005, 1.0) == doctest::Approx(-0.25).epsilon(0.01));
}

TEST_CASE("configuration invariants") {
  CHECK_NOTHROW(validate(pulling_figure_config()));
  CHECK_NOTHROW(validate(pushing_figure_config()));
  auto bad = pulling_figure_config();
  bad.delta_width = 0.05;
  CHECK_THROWS_AS(validate(bad), ConfigError);
  bad = pulling_figure_config();
  bad.cap_width = 296.0;
  CHECK_THROWS_AS(validate(bad), ConfigError);
  bad = pulling_figure_config();
  bad.cap_width_right = 36.0;
  CHECK_THROWS_AS(validate(bad), ConfigError);
  bad = pulling_figure_config();
  bad.dt = 0.05;
  CHECK_THROWS_AS(validate(bad), ConfigError);
  bad = pulling_figure_config();
  bad.n_points = 17000;
  CHECK_THROWS_AS(validate(bad), ConfigError);
  bad = pulling_figure_config();
  bad.scenario = Scenario::stationary;
  CHECK_THROWS_AS(evolve(bad), ConfigError);
  bad = pulling_figure_config();
  bad.initial = InitialState::custom;
  CHECK_THROWS_AS(validate(bad), ConfigError);
  CHECK(initial_state_from_string(to_string(InitialState::hard_wall_state)) ==
        InitialState::hard_wall_state);
  CHECK_THROWS_AS(initial_state_from_string("gaussian"), ConfigError);
}

TEST_CASE("unitary without absorption") {
  auto c = free_box();
  c.use_cap = false;
  c.t_final = 20.0;
  const auto r = evolve(c);
  for (std::size_t k = 1; k < r.total_norm.size(); ++k)
    CHECK(std::abs(r.total_norm[k] - r.total_norm[k - 1]) <= 1e-8 * c.dt);
  CHECK(std::abs(r.total_norm.back() - r.total_norm.front()) <= 1e-8 * c.t_final);
}

TEST_CASE("bound state without field is stationary") {
  auto c = free_box();
  c.xi_min = -40.0;
  c.xi_max = 40.0;
  c.cap_width = 15.0;
  c.cap_width_right = 15.0;
  c.delta_width = 0.006;
  c.n_points = 40001;
  c.t_final = 50.0;
  c.snapshot_stride = 100;
  c.xi_stride = 1;
  const auto r = evolve(c);
  // Inside the regularization core the smoothed well rounds the cusp by O(w).
  double core = 0.0, outside = 0.0;
  for (const auto& row : r.density) {
    for (std::size_t j = 0; j < row.size(); ++j) {
      const double d = std::abs(std::sqrt(row[j]) - std::sqrt(r.density.front()[j]));
      (std::abs(r.snapshot_xi[j]) <= 0.1 ? core : outside) =
          std::max(std::abs(r.snapshot_xi[j]) <= 0.1 ? core : outside, d);
    }
  }
  CHECK(outside <= 2e-4);
  CHECK(core <= 2.5e-3);
  const double p0 = r.norm_in_trap.front().second;
  for (const auto& [tau, p] : r.norm_in_trap) CHECK(std::abs(p - p0) <= 1e-4);
}

TEST_CASE("absorbing layer reflects little") {
  for (double k : {3.0, 4.0, 5.0, 6.0}) {
    CAPTURE(k);
    TdseConfig c;
    c.field = 0.0;
    c.xi_min = -140.0;
    c.xi_max = 20.0;
    c.n_points = 8001;
    c.t_final = 100.0 / k;
    c.initial = InitialState::custom;
    const auto x = tdse_grid(c);
    c.custom_initial.resize(x.size());
    double norm = 0.0;
    for (std::size_t j = 0; j < x.size(); ++j) {
      const double d = x[j] + 50.0;
      c.custom_initial[j] = std::exp(-d * d / 50.0) * std::polar(1.0, -k * x[j]);
      norm += std::norm(c.custom_initial[j]) * 0.02;
    }
    for (auto& v : c.custom_initial) v /= std::sqrt(norm);
    const auto r = evolve(c);
    CHECK(std::sqrt(r.total_norm.back()) <= 1e-4);
  }
}

TEST_CASE("decay fit") {
  std::vector<std::pair<double, double>> s;
  for (int k = 0; k <= 1000; ++k) s.emplace_back(0.1 * k, std::exp(-0.02 * 0.1 * k));
  const auto fit = fit_decay_rate(s, 0.0, 100.0);
  CHECK(fit.gamma == doctest::Approx(0.02).epsilon(1e-6));
  CHECK(fit.r2 == doctest::Approx(1.0));
  s[500].second *= 1.01;
  CHECK_THROWS_AS(fit_decay_rate(s, 0.0, 100.0), FitError);
  CHECK_THROWS_AS(fit_decay_rate(s, 10.0, 10.05), FitError);
  CHECK_THROWS_AS(fit_decay_rate(s, 20.0, 10.0), FitError);
}

TEST_CASE("pulling decay matches the resonance") {
  const auto r = evolve(small_pulling());
  const double expected = 2.0 * solve_pulling(0.1).decay_constant();
  REQUIRE(std::isfinite(r.fitted_gamma));
  CHECK(r.fit_r2 >= 0.99);
  CHECK(std::abs(r.fitted_gamma / expected - 1.0) <= 0.1);
  CHECK(r.fit_window.first > 0.0);
  // Trap norm decreases once the transient has left.
  for (std::size_t k = 1; k < r.norm_in_trap.size(); ++k)
    if (r.norm_in_trap[k].first >= r.fit_window.first)
      CHECK(r.norm_in_trap[k].second <= r.norm_in_trap[k - 1].second + 1e-6);
  CHECK_THROWS_AS(fit_decay_rate(r, 0.0, 500.0), FitError);

  CHECK(mode_discrepancy(r) < 0.2);
  const auto mode = analytic_mode_density(r);
  REQUIRE(mode.size() == r.density.size());
  double s0 = 0.0;
  const double dx = r.snapshot_xi[1] - r.snapshot_xi[0];
  for (std::size_t j = 0; j < r.snapshot_xi.size(); ++j)
    if (std::abs(r.snapshot_xi[j]) <= 5.0) s0 += mode.front()[j] * dx;
  CHECK(s0 == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("lab frame resampling") {
  auto c = small_pulling();
  c.t_final = 10.0;
  const auto r = evolve(c);

  const auto still = lab_frame_density(r, trap_from_accel(c.epsilon, 0.0));
  REQUIRE(still.x.size() == r.snapshot_xi.size());
  for (std::size_t s = 0; s < r.density.size(); ++s) {
    CHECK(still.t[s] == doctest::Approx(r.snapshot_tau[s] / (2.0 * c.epsilon * c.epsilon)));
    for (std::size_t j = 0; j < still.x.size(); j += 97)
      CHECK(still.density[s][j] == doctest::Approx(r.density[s][j]).epsilon(1e-12));
  }

  // The density peak rides the parabola x = a t^2 / 2.
  const TrapParams p = trap_from_field(c.epsilon, c.field);
  const auto lab = lab_frame_density(r, p);
  const double dx = lab.x[1] - lab.x[0];
  for (std::size_t s = 0; s < lab.t.size(); s += 5) {
    std::size_t peak = 0;
    for (std::size_t j = 0; j < lab.x.size(); ++j)
      if (lab.density[s][j] > lab.density[s][peak]) peak = j;
    CHECK(std::abs(lab.x[peak] - 0.5 * p.accel * lab.t[s] * lab.t[s]) <= 2.0 * dx);
  }
}

TEST_CASE("pushing run keeps density behind the barrier") {
  auto c = pushing_figure_config();
  c.xi_min = -150.0;
  c.n_points = 9501;
  c.t_final = 60.0;
  const auto r = evolve(c);
  const double expected = 2.0 * solve_pushing(0.06).decay_constant();
  REQUIRE(std::isfinite(r.fitted_gamma));
  CHECK(std::abs(r.fitted_gamma / expected - 1.0) <= 0.15);
  double right = 0.0, left = 0.0;
  const auto& last = r.density.back();
  for (std::size_t j = 0; j < last.size(); ++j) (r.snapshot_xi[j] > 0.0 ? right : left) += last[j];
  CHECK(right > 0.0);
  CHECK(r.norm_in_trap.back().second < r.norm_in_trap.front().second);
}
