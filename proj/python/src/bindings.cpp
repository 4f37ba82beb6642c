#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "airytrap/airy.hpp"
#include "airytrap/errors.hpp"
#include "airytrap/frames.hpp"
#include "airytrap/pulling.hpp"
#include "airytrap/pushing.hpp"
#include "airytrap/stationary.hpp"
#include "airytrap/tdse.hpp"

namespace py = pybind11;
using namespace airytrap;

namespace {

template <class E>
void register_error(py::module_& m, const char* name, py::handle base) {
  static py::exception<E> exc(m, name, base);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const E& e) {
      exc(e.what());
    }
  });
}

}  // namespace

PYBIND11_MODULE(_airytrap, m) {
  m.doc() = "Resonances of a delta trap under uniform acceleration";

  static py::exception<Error> base(m, "AirytrapError", PyExc_RuntimeError);
  // Translators run newest first, so the catch-all goes in before the specific types.
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      base(e.what());
    }
  });
  register_error<DomainError>(m, "DomainError", base);
  register_error<AccuracyError>(m, "AccuracyError", base);
  register_error<ConvergenceError>(m, "ConvergenceError", base);
  register_error<BranchError>(m, "BranchError", base);
  register_error<SingularError>(m, "SingularError", base);
  register_error<QuadratureError>(m, "QuadratureError", base);
  register_error<StabilityError>(m, "StabilityError", base);
  register_error<ConfigError>(m, "ConfigError", base);
  register_error<FitError>(m, "FitError", base);
  register_error<EmptyDataError>(m, "EmptyDataError", base);

  py::class_<AiryQuad>(m, "AiryQuad")
      .def_readonly("ai", &AiryQuad::ai)
      .def_readonly("ai_prime", &AiryQuad::ai_prime)
      .def_readonly("bi", &AiryQuad::bi)
      .def_readonly("bi_prime", &AiryQuad::bi_prime)
      .def_readonly("est_error", &AiryQuad::est_error);
  m.def("airy_eval", &airy_eval, py::arg("z"));
  m.def("ai_zero", &ai_zero, py::arg("n"));

  m.def("field_strength", &field_strength, py::arg("epsilon"), py::arg("accel"));

  py::class_<StationaryState>(m, "StationaryState")
      .def_readonly("field", &StationaryState::field)
      .def_readonly("energy", &StationaryState::energy)
      .def_readonly("zeta0", &StationaryState::zeta0)
      .def_readonly("coeff_c", &StationaryState::coeff_c)
      .def_readonly("log_tail_intensity", &StationaryState::log_tail_intensity)
      .def_readonly("first_term_root", &StationaryState::first_term_root);
  m.def("resonance_energy", &resonance_energy, py::arg("field"));

  py::class_<ResonanceSolution>(m, "ResonanceSolution")
      .def_readonly("field", &ResonanceSolution::field)
      .def_readonly("zeta0", &ResonanceSolution::zeta0)
      .def_readonly("energy", &ResonanceSolution::energy)
      .def_readonly("residual", &ResonanceSolution::residual)
      .def_readonly("iterations", &ResonanceSolution::iterations)
      .def_property_readonly("seed", [](const ResonanceSolution& s) { return to_string(s.seed_used); })
      .def_property_readonly("decay_constant", &ResonanceSolution::decay_constant);
  m.def("solve_pulling", &solve_pulling, py::arg("field"));
  m.def("pulling_sweep", &pulling_sweep, py::arg("f_min"), py::arg("f_max"), py::arg("n"));
  m.def("weak_field_energy", &weak_field_energy, py::arg("field"));
  m.def("strong_field_energy", &strong_field_energy, py::arg("field"));

  py::class_<DecayMetrics>(m, "DecayMetrics")
      .def_readonly("epsilon", &DecayMetrics::epsilon)
      .def_readonly("accel", &DecayMetrics::accel)
      .def_readonly("decay_rate", &DecayMetrics::decay_rate)
      .def_readonly("lifetime_scaled", &DecayMetrics::lifetime_scaled)
      .def_readonly("vmax_scaled", &DecayMetrics::vmax_scaled)
      .def_readonly("lifetime_weak", &DecayMetrics::lifetime_weak)
      .def_readonly("vmax_weak", &DecayMetrics::vmax_weak);
  m.def("decay_metrics",
        py::overload_cast<const ResonanceSolution&, double>(&decay_metrics),
        py::arg("solution"), py::arg("epsilon"));

  py::class_<PushedState>(m, "PushedState")
      .def_readonly("field", &PushedState::field)
      .def_readonly("zeta0", &PushedState::zeta0)
      .def_readonly("energy", &PushedState::energy)
      .def_readonly("norm_N", &PushedState::norm_N)
      .def_readonly("coeff_N0", &PushedState::coeff_N0)
      .def_readonly("residual", &PushedState::residual)
      .def_property_readonly("decay_constant", &PushedState::decay_constant);
  m.def("solve_pushing", &solve_pushing, py::arg("field"));
  m.def("pushing_sweep", &pushing_sweep, py::arg("f_min"), py::arg("f_max"), py::arg("n"));
  m.def("hard_wall_energy", &hard_wall_energy, py::arg("field"));
  m.def("hard_wall_norm", &hard_wall_norm, py::arg("field"));

  py::class_<ExpansionFit>(m, "ExpansionFit")
      .def_readonly("gamma", &ExpansionFit::gamma)
      .def_readonly("gamma_intercept", &ExpansionFit::gamma_intercept)
      .def_readonly("shift_coefficient", &ExpansionFit::shift_coefficient)
      .def_readonly("points", &ExpansionFit::points);
  m.def("fit_expansion", &fit_expansion, py::arg("f_min"), py::arg("f_max"), py::arg("n"));

  m.def(
      "to_physical",
      [](const std::string& preset, const std::string& quantity, double value) {
        const auto v = to_physical(scaling_from_preset(preset), quantity_from_string(quantity), value);
        return py::make_tuple(v.value, v.unit);
      },
      py::arg("preset"), py::arg("quantity"), py::arg("value"),
      "Scaled value to SI; returns (value, unit).");

  py::class_<TdseConfig>(m, "TdseConfig")
      .def(py::init<>())
      .def_property(
          "scenario", [](const TdseConfig& c) { return to_string(c.scenario); },
          [](TdseConfig& c, const std::string& s) { c.scenario = scenario_from_string(s); })
      .def_property(
          "initial", [](const TdseConfig& c) { return to_string(c.initial); },
          [](TdseConfig& c, const std::string& s) { c.initial = initial_state_from_string(s); })
      .def_readwrite("field", &TdseConfig::field)
      .def_readwrite("epsilon", &TdseConfig::epsilon)
      .def_readwrite("xi_min", &TdseConfig::xi_min)
      .def_readwrite("xi_max", &TdseConfig::xi_max)
      .def_readwrite("n_points", &TdseConfig::n_points)
      .def_readwrite("dt", &TdseConfig::dt)
      .def_readwrite("t_final", &TdseConfig::t_final)
      .def_readwrite("delta_width", &TdseConfig::delta_width)
      .def_readwrite("cap_strength", &TdseConfig::cap_strength)
      .def_readwrite("cap_width", &TdseConfig::cap_width)
      .def_readwrite("cap_width_right", &TdseConfig::cap_width_right)
      .def_readwrite("use_cap", &TdseConfig::use_cap)
      .def_readwrite("trap_halfwidth", &TdseConfig::trap_halfwidth)
      .def_readwrite("snapshot_stride", &TdseConfig::snapshot_stride)
      .def_readwrite("xi_stride", &TdseConfig::xi_stride);
  m.def("pulling_figure_config", &pulling_figure_config);
  m.def("pushing_figure_config", &pushing_figure_config);

  py::class_<TdseRun>(m, "TdseRun")
      .def_readonly("delta_strength", &TdseRun::delta_strength)
      .def_readonly("snapshot_tau", &TdseRun::snapshot_tau)
      .def_readonly("snapshot_xi", &TdseRun::snapshot_xi)
      .def_readonly("density", &TdseRun::density)
      .def_readonly("norm_in_trap", &TdseRun::norm_in_trap)
      .def_readonly("total_norm", &TdseRun::total_norm)
      .def_readonly("fitted_gamma", &TdseRun::fitted_gamma)
      .def_readonly("fit_window", &TdseRun::fit_window)
      .def_readonly("fit_r2", &TdseRun::fit_r2);
  m.def("evolve", &evolve, py::arg("config"), py::call_guard<py::gil_scoped_release>());

  py::class_<DecayFit>(m, "DecayFit")
      .def_readonly("gamma", &DecayFit::gamma)
      .def_readonly("r2", &DecayFit::r2)
      .def_readonly("window", &DecayFit::window);
  m.def("fit_decay_rate", py::overload_cast<const TdseRun&>(&fit_decay_rate), py::arg("run"));
  m.def("fit_decay_rate", py::overload_cast<const TdseRun&, double, double>(&fit_decay_rate),
        py::arg("run"), py::arg("tau1"), py::arg("tau2"));
}
