#include "airytrap/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <future>
#include <numbers>
#include <set>
#include <sstream>

#include "airytrap/airy.hpp"
#include "airytrap/csv.hpp"
#include "airytrap/errors.hpp"
#include "airytrap/frames.hpp"
#include "airytrap/plot.hpp"
#include "airytrap/pulling.hpp"
#include "airytrap/pushing.hpp"
#include "airytrap/stationary.hpp"
#include "airytrap/tdse.hpp"

#ifndef AIRYTRAP_VERSION
#define AIRYTRAP_VERSION "0.0.0"
#endif

namespace airytrap {

const char* code_version() { return AIRYTRAP_VERSION; }

namespace {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

// Bad flag values and config contents; reported as usage errors.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

json complex_json(Complex z) { return json{{"re", z.real()}, {"im", z.imag()}}; }

struct Context {
  fs::path outdir = ".";
  bool quiet = false;
  json config = json::object();
  json params = json::object();
  std::vector<std::string> outputs;
  std::ostream* out = nullptr;

  std::string write(const std::string& name, const std::string& content) {
    fs::create_directories(outdir);
    const fs::path p = outdir / name;
    write_text(p.string(), content);
    outputs.push_back(p.string());
    return p.string();
  }
  std::string write_path(const fs::path& path, const std::string& content) {
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    write_text(path.string(), content);
    outputs.push_back(path.string());
    return path.string();
  }
};

// --out accepts a bare format (csv, svg, json) or a file name whose extension sets it.
struct OutputSpec {
  std::string format;
  std::string path;  // empty: default name inside outdir
};

OutputSpec parse_out(const std::string& value) {
  if (value == "csv" || value == "svg" || value == "json") return {value, ""};
  const auto ext = fs::path(value).extension().string();
  if (ext == ".csv" || ext == ".svg" || ext == ".json") return {ext.substr(1), value};
  throw UsageError("--out expects csv, svg, json or a file name ending in one of them, got '" +
                   value + "'");
}

std::string place(Context& ctx, const OutputSpec& spec, const std::string& default_name,
                  const std::string& content) {
  if (spec.path.empty()) return ctx.write(default_name, content);
  fs::path p(spec.path);
  if (p.is_relative() && !p.has_parent_path()) p = ctx.outdir / p;
  return ctx.write_path(p, content);
}

GridSpec grid_option(const std::string& text, const char* flag) {
  try {
    return parse_grid_spec(text);
  } catch (const ConfigError& e) {
    throw UsageError(std::string(flag) + ": " + e.what());
  }
}

double config_number(const json& cfg, const char* key, double fallback) {
  if (!cfg.contains(key)) return fallback;
  if (!cfg[key].is_number()) throw UsageError(std::string("config key '") + key + "' must be a number");
  return cfg[key].get<double>();
}

// Resolves epsilon and F from flags first, then the config file.
struct TrapChoice {
  double epsilon = 0.5;
  double field = std::nan("");
  bool from_accel = false;
  double accel = 0.0;
};

TrapChoice trap_choice(const Context& ctx, double flag_eps, double flag_field, double flag_accel) {
  TrapChoice t;
  t.epsilon = std::isnan(flag_eps) ? config_number(ctx.config, "epsilon", 0.5) : flag_eps;
  if (!(t.epsilon > 0.0)) throw UsageError("--epsilon must be > 0");
  double field = std::isnan(flag_field) ? config_number(ctx.config, "field", std::nan("")) : flag_field;
  double accel = std::isnan(flag_accel) ? config_number(ctx.config, "accel", std::nan("")) : flag_accel;
  if (!std::isnan(flag_field)) accel = std::nan("");
  if (!std::isnan(field) && !std::isnan(accel))
    throw UsageError("give either field or accel, not both");
  if (!std::isnan(accel)) {
    if (!(accel >= 0.0)) throw UsageError("--accel must be >= 0");
    t.from_accel = true;
    t.accel = accel;
    t.field = field_strength(t.epsilon, accel);
  } else {
    t.field = field;
    if (!std::isnan(field)) t.accel = trap_from_field(t.epsilon, field).accel;
  }
  return t;
}

PhysicalScaling scaling_choice(const Context& ctx, const std::string& flag) {
  if (!flag.empty()) {
    try {
      return scaling_from_preset(flag);
    } catch (const Error& e) {
      throw UsageError(std::string("--scaling: ") + e.what());
    }
  }
  if (!ctx.config.contains("scaling")) return rubidium_scaling();
  const json& s = ctx.config["scaling"];
  if (s.is_string()) return scaling_from_preset(s.get<std::string>());
  if (s.is_object())
    return custom_scaling(config_number(s, "x0", 1e-9), config_number(s, "t0", 1.5e-9),
                          config_number(s, "well_depth", 1e-5), config_number(s, "well_width", 1e-10));
  throw UsageError("config key 'scaling' must be a preset name or an object");
}

json physical_json(const PhysicalScaling& s, double lifetime, double vmax, double accel) {
  json j;
  j["preset"] = to_string(s.preset);
  auto add = [&](const char* name, Quantity q, double v) {
    const auto pv = to_physical(s, q, v);
    j[name] = json{{"value", pv.value}, {"unit", pv.unit}};
  };
  add("lifetime", Quantity::lifetime, lifetime);
  add("vmax", Quantity::vmax, vmax);
  add("accel", Quantity::accel, accel);
  if (!s.time_is_distance) j["accel_in_g"] = to_physical(s, Quantity::accel, accel).value / kStandardGravity;
  return j;
}

// ---------------------------------------------------------------- tables and plots

CsvTable profile_table(const WavefunctionProfile& p) {
  CsvTable t{{"xi", "abs_phi", "re_phi", "im_phi"}, {}};
  for (std::size_t j = 0; j < p.grid.size(); ++j)
    t.rows.push_back({p.grid[j], std::abs(p.values[j]), p.values[j].real(), p.values[j].imag()});
  return t;
}

CsvTable profiles_long(const std::vector<WavefunctionProfile>& ps) {
  CsvTable t{{"F", "xi", "abs_phi", "re_phi", "im_phi"}, {}};
  for (const auto& p : ps)
    for (std::size_t j = 0; j < p.grid.size(); ++j)
      t.rows.push_back({p.field, p.grid[j], std::abs(p.values[j]), p.values[j].real(), p.values[j].imag()});
  return t;
}

const char* kPalette[] = {"#1f4e9c", "#c2410c", "#15803d", "#7e22ce", "#b91c1c"};

std::string profiles_svg(const std::vector<WavefunctionProfile>& ps, bool log_abs,
                         const std::string& title) {
  Panel panel;
  panel.axes = {title, "xi", log_abs ? "log10 |phi|" : "|phi|", false, false};
  for (std::size_t i = 0; i < ps.size(); ++i) {
    Series s;
    s.label = "F = " + format_number(ps[i].field);
    s.color = kPalette[i % 5];
    for (std::size_t j = 0; j < ps[i].grid.size(); ++j) {
      const double a = std::abs(ps[i].values[j]);
      s.x.push_back(ps[i].grid[j]);
      s.y.push_back(log_abs ? (a > 0.0 ? std::log10(a) : std::nan("")) : a);
    }
    panel.series.push_back(std::move(s));
  }
  return render_line_svg(panel);
}

CsvTable pulling_table(const std::vector<ResonanceSolution>& sols, double eps) {
  CsvTable t{{"F", "invF", "reE", "imE", "EI", "residual", "reE_weak", "imE_weak", "T_scaled",
              "vmax_scaled"},
             {}};
  for (const auto& s : sols) {
    const Complex w = weak_field_energy(s.field);
    const auto m = decay_metrics(s, eps);
    t.rows.push_back({s.field, 1.0 / s.field, s.energy.real(), s.energy.imag(), s.decay_constant(),
                      s.residual, w.real(), w.imag(), m.lifetime_scaled, m.vmax_scaled});
  }
  return t;
}

CsvTable pushing_table(const std::vector<PushedState>& states, double eps) {
  CsvTable t{{"F", "invF", "reE", "imE", "EI", "residual", "reE_weak", "imE_weak", "T_scaled",
              "vmax_scaled", "N", "absN0", "E_hardwall"},
             {}};
  const double a1 = ai_zero(1);
  for (const auto& s : states) {
    const double c = std::cbrt(s.field);
    const Complex expansion = energy_of_zeta0(Complex(a1 + c, kPushingGammaSeed * c * c), s.field);
    const auto m = pushing_metrics(s, eps, trap_from_field(eps, s.field).accel);
    t.rows.push_back({s.field, 1.0 / s.field, s.energy.real(), s.energy.imag(), s.decay_constant(),
                      s.residual, expansion.real(), expansion.imag(), m.lifetime_scaled,
                      m.vmax_scaled, s.norm_N, std::abs(s.coeff_N0), hard_wall_energy(s.field)});
  }
  return t;
}

std::string pulling_sweep_svg(const std::vector<ResonanceSolution>& sols) {
  Panel re, im;
  re.axes = {"Resonance energy of the pulled state", "", "Re E", false, false};
  im.axes = {"", "1/F", "|Im E|", false, true};
  Series sr{"numerical", {}, {}, kPalette[0], LineStyle::solid};
  Series si{"numerical", {}, {}, kPalette[0], LineStyle::solid};
  Series sw{"weak-field form", {}, {}, "#d62728", LineStyle::dotted};
  for (const auto& s : sols) {
    sr.x.push_back(1.0 / s.field);
    sr.y.push_back(s.energy.real());
    si.x.push_back(1.0 / s.field);
    si.y.push_back(std::abs(s.energy.imag()));
    sw.x.push_back(1.0 / s.field);
    sw.y.push_back(std::abs(weak_field_energy(s.field).imag()));
  }
  re.series = {sr};
  im.series = {si, sw};
  return render_line_svg(std::vector<Panel>{re, im});
}

std::string pushing_sweep_svg(const std::vector<PushedState>& states) {
  Panel re, im;
  re.axes = {"Resonance energy of the pushed state", "", "Re E", true, true};
  im.axes = {"", "F", "|Im E|", true, true};
  Series sr{"numerical", {}, {}, kPalette[0], LineStyle::solid};
  Series sh{"hard wall", {}, {}, "#d62728", LineStyle::dotted};
  Series si{"numerical", {}, {}, kPalette[0], LineStyle::solid};
  Series sg{"gamma F^(4/3)", {}, {}, "#d62728", LineStyle::dotted};
  for (const auto& s : states) {
    sr.x.push_back(s.field);
    sr.y.push_back(s.energy.real());
    sh.x.push_back(s.field);
    sh.y.push_back(hard_wall_energy(s.field));
    si.x.push_back(s.field);
    si.y.push_back(std::abs(s.energy.imag()));
    sg.x.push_back(s.field);
    sg.y.push_back(kPushingGammaSeed * std::pow(s.field, 4.0 / 3.0));
  }
  re.series = {sr, sh};
  im.series = {si, sg};
  return render_line_svg(std::vector<Panel>{re, im});
}

CsvTable density_table(const TdseRun& run) {
  CsvTable t{{"tau", "xi", "density"}, {}};
  t.rows.reserve(run.snapshot_tau.size() * run.snapshot_xi.size());
  for (std::size_t s = 0; s < run.snapshot_tau.size(); ++s)
    for (std::size_t j = 0; j < run.snapshot_xi.size(); ++j)
      t.rows.push_back({run.snapshot_tau[s], run.snapshot_xi[j], run.density[s][j]});
  return t;
}

CsvTable norms_table(const TdseRun& run) {
  CsvTable t{{"tau", "P", "total_norm"}, {}};
  for (std::size_t k = 0; k < run.norm_in_trap.size(); ++k)
    t.rows.push_back({run.norm_in_trap[k].first, run.norm_in_trap[k].second, run.total_norm[k]});
  return t;
}

// Lab-frame heatmap of the comoving window near the trap, with the trap trajectory.
std::string density_svg(const TdseRun& run, bool lab) {
  const auto& c = run.config;
  const TrapParams params = trap_from_field(c.epsilon, c.field);
  Heatmap map;
  map.log_color = true;
  map.colorbar_label = "|psi|^2";
  const double lo = std::max(c.xi_min, -120.0), hi = std::min(c.xi_max, 20.0);
  if (!lab) {
    std::size_t j0 = 0, j1 = run.snapshot_xi.size();
    while (j0 < j1 && run.snapshot_xi[j0] < lo) ++j0;
    while (j1 > j0 && run.snapshot_xi[j1 - 1] > hi) --j1;
    map.x.assign(run.snapshot_xi.begin() + j0, run.snapshot_xi.begin() + j1);
    map.y = run.snapshot_tau;
    for (const auto& row : run.density) map.z.emplace_back(row.begin() + j0, row.begin() + j1);
    map.axes = {"Density in the comoving frame", "xi", "tau", false, false};
    map.overlays.push_back({"trap", {0.0, 0.0}, {map.y.front(), map.y.back()}, "#ffffff", LineStyle::dotted});
    return render_heatmap_svg(map);
  }
  const double t_end = t_of_tau(run.snapshot_tau.back(), c.epsilon);
  const double x_lo = lab_x(lo, 0.0, params), x_hi = lab_x(hi, t_end, params);
  std::vector<double> x(600);
  for (std::size_t j = 0; j < x.size(); ++j) x[j] = x_lo + (x_hi - x_lo) * j / (x.size() - 1);
  const LabDensity d = lab_frame_density(run, params, x);
  map.x = d.x;
  map.y = d.t;
  map.z = d.density;
  map.axes = {"Density in the laboratory frame", "x", "t", false, false};
  Series parabola{"trap", {}, {}, "#ffffff", LineStyle::dotted};
  for (double t : d.t) {
    parabola.x.push_back(0.5 * params.accel * t * t);
    parabola.y.push_back(t);
  }
  map.overlays.push_back(parabola);
  return render_heatmap_svg(map);
}

// ---------------------------------------------------------------- figures

struct FigureOutput {
  std::vector<std::pair<std::string, std::string>> files;  // name, content
};

FigureOutput figure_stationary() {
  std::vector<WavefunctionProfile> ps;
  for (double f : {0.02, 0.05, 0.1}) ps.push_back(quasi_bound_profile(f, GridSpec{}));
  return {{{"fig1.csv", to_csv(profiles_long(ps))},
           {"fig1.svg", profiles_svg(ps, true, "Quasi-bound stationary states")}}};
}

FigureOutput figure_pulling_sweep(double eps) {
  const auto sols = pulling_sweep(1.0 / 25.0, 1.0, 120);
  return {{{"fig3.csv", to_csv(pulling_table(sols, eps))}, {"fig3.svg", pulling_sweep_svg(sols)}}};
}

FigureOutput figure_pulling_modes() {
  std::vector<WavefunctionProfile> ps;
  for (double f : {0.05, 0.1, 0.3}) ps.push_back(pulling_profile(solve_pulling(f), GridSpec{}));
  return {{{"fig4.csv", to_csv(profiles_long(ps))},
           {"fig4.svg", profiles_svg(ps, false, "Eigenmodes of the pulling trap")}}};
}

FigureOutput figure_tdse(const TdseConfig& cfg, const std::string& stem) {
  const auto run = evolve(cfg);
  return {{{stem + ".csv", to_csv(density_table(run))},
           {stem + "_norms.csv", to_csv(norms_table(run))},
           {stem + ".svg", density_svg(run, true)}}};
}

FigureOutput figure_pushing_modes() {
  std::vector<WavefunctionProfile> ps;
  for (double f : {0.02, 0.06, 0.1}) ps.push_back(pushing_profile(solve_pushing(f), GridSpec{}));
  return {{{"fig7.csv", to_csv(profiles_long(ps))},
           {"fig7.svg", profiles_svg(ps, false, "Eigenstates pushed by the barrier")}}};
}

// ---------------------------------------------------------------- tdse config

TdseConfig tdse_from_json(TdseConfig c, const json& j) {
  if (!j.is_object()) throw UsageError("config key 'tdse' must be an object");
  static const std::set<std::string> known = {
      "xi_min", "xi_max", "n_points", "dt", "t_final", "delta_width", "calibrate_delta",
      "cap_strength", "cap_width", "cap_width_right", "use_cap", "initial", "trap_halfwidth",
      "snapshot_stride", "xi_stride"};
  for (const auto& [key, value] : j.items())
    if (!known.count(key)) throw UsageError("unknown tdse config key '" + key + "'");
  try {
    c.xi_min = j.value("xi_min", c.xi_min);
    c.xi_max = j.value("xi_max", c.xi_max);
    c.n_points = j.value("n_points", c.n_points);
    c.dt = j.value("dt", c.dt);
    c.t_final = j.value("t_final", c.t_final);
    c.delta_width = j.value("delta_width", c.delta_width);
    c.calibrate_delta = j.value("calibrate_delta", c.calibrate_delta);
    c.cap_strength = j.value("cap_strength", c.cap_strength);
    c.cap_width = j.value("cap_width", c.cap_width);
    c.cap_width_right = j.value("cap_width_right", c.cap_width_right);
    c.use_cap = j.value("use_cap", c.use_cap);
    c.trap_halfwidth = j.value("trap_halfwidth", c.trap_halfwidth);
    c.snapshot_stride = j.value("snapshot_stride", c.snapshot_stride);
    c.xi_stride = j.value("xi_stride", c.xi_stride);
    if (j.contains("initial")) c.initial = initial_state_from_string(j["initial"].get<std::string>());
  } catch (const json::exception& e) {
    throw UsageError(std::string("tdse config: ") + e.what());
  }
  return c;
}

// ---------------------------------------------------------------- manifest

std::string iso_timestamp() {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

void write_manifest(Context& ctx, const std::string& subcommand) {
  if (ctx.outputs.empty()) return;
  json m;
  m["subcommand"] = subcommand;
  m["params"] = ctx.params;
  m["outputs"] = ctx.outputs;
  m["timestamp"] = iso_timestamp();
  m["code_version"] = code_version();
  const fs::path dir = fs::path(ctx.outputs.front()).parent_path();
  const fs::path p = (dir.empty() ? fs::path(".") : dir) / ("manifest_" + subcommand + ".json");
  write_text(p.string(), m.dump(2) + "\n");
}

void report(Context& ctx, const json& j) { *ctx.out << j.dump(2) << "\n"; }

void note_outputs(Context& ctx) {
  if (ctx.quiet) return;
  for (const auto& o : ctx.outputs) *ctx.out << "wrote " << o << "\n";
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Resonances of a particle held by an accelerating delta potential", "airy-trap"};
  app.require_subcommand(1, 1);
  app.fallthrough();
  app.set_version_flag("--version", code_version());

  std::string config_path, outdir;
  bool seedless = false, quiet = false;
  app.add_option("--config", config_path, "JSON file with epsilon, accel or field, scaling, tdse")
      ->check(CLI::ExistingFile);
  app.add_option("--outdir", outdir, "Output directory (default $AIRY_TRAP_OUTDIR or .)");
  app.add_flag("--seedless", seedless, "Reserved; every computation is deterministic");
  app.add_flag("--quiet", quiet, "Suppress progress messages");

  const double unset = std::nan("");

  auto* airy = app.add_subcommand("airy", "Ai, Ai', Bi, Bi' at a complex point");
  double re = 0.0, im = 0.0;
  airy->add_option("--re", re, "Real part")->required();
  airy->add_option("--im", im, "Imaginary part");

  auto* stat = app.add_subcommand("stationary", "Least-delocalized stationary state");
  double st_field = unset;
  std::string st_grid = "-40:10:2001", st_out = "json";
  stat->add_option("--field", st_field, "Field strength F");
  stat->add_option("--grid", st_grid, "Profile grid min:max:n");
  stat->add_option("--out", st_out, "csv, svg, json or a file name");

  auto* pull = app.add_subcommand("pulling", "Decaying resonance of the attractive trap");
  auto* push = app.add_subcommand("pushing", "Resonance of the pushing barrier");
  struct ResonanceFlags {
    double field = std::nan(""), epsilon = std::nan(""), accel = std::nan("");
    std::string sweep, profile, out = "json", scaling;
  } pf, sf;
  for (auto [cmd, f] : {std::pair{pull, &pf}, std::pair{push, &sf}}) {
    cmd->add_option("--field", f->field, "Field strength F");
    cmd->add_option("--epsilon", f->epsilon, "Scaled delta strength (default 0.5)");
    cmd->add_option("--accel", f->accel, "Scaled acceleration; sets F with epsilon");
    cmd->add_option("--sweep", f->sweep, "Fmin:Fmax:n, log-spaced");
    cmd->add_option("--profile", f->profile, "Mode profile on grid min:max:n");
    cmd->add_option("--out", f->out, "csv, svg, json or a file name");
    cmd->add_option("--scaling", f->scaling, "rubidium_atom or optical_beam units for json");
  }

  auto* td = app.add_subcommand("tdse", "Time-domain simulation in the comoving frame");
  std::string td_scenario = "pulling", td_out = "density.svg", td_norms, td_frame = "lab", td_initial;
  double td_field = unset, td_eps = unset, td_tfinal = unset;
  td->add_option("--scenario", td_scenario, "pulling or pushing")
      ->check(CLI::IsMember({"pulling", "pushing"}));
  td->add_option("--field", td_field, "Field strength F");
  td->add_option("--epsilon", td_eps, "Scaled delta strength, for the lab-frame time axis");
  td->add_option("--out", td_out, "density.csv or density.svg");
  td->add_option("--norms", td_norms, "CSV of the trapped probability P(tau)");
  td->add_option("--frame", td_frame, "Heatmap frame")->check(CLI::IsMember({"lab", "comoving"}));
  td->add_option("--initial", td_initial, "bound_state or hard_wall_state")
      ->check(CLI::IsMember({"bound_state", "hard_wall_state"}));
  td->add_option("--t-final", td_tfinal, "Final tau");

  auto* figs = app.add_subcommand("figures", "Regenerate the figure set");
  std::string which = "1,3,4,5,6,7";
  figs->add_option("--which", which, "Comma-separated figure numbers from 1,3,4,5,6,7");

  std::vector<std::string> argv_store{"airy-trap"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& a : argv_store) argv.push_back(a.data());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::CallForVersion&) {
    out << code_version() << "\n";
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n" << app.help();
    return 2;
  }

  Context ctx;
  ctx.quiet = quiet;
  ctx.out = &out;
  std::string subcommand = app.get_subcommands().front()->get_name();
  try {
    if (!outdir.empty()) {
      ctx.outdir = outdir;
    } else if (const char* env = std::getenv("AIRY_TRAP_OUTDIR"); env && *env) {
      ctx.outdir = env;
    }
    if (!config_path.empty()) {
      std::ifstream f(config_path);
      try {
        ctx.config = json::parse(f);
      } catch (const json::exception& e) {
        throw UsageError(std::string("--config: ") + e.what());
      }
      if (!ctx.config.is_object()) throw UsageError("--config: top level must be an object");
      ctx.params["config"] = config_path;
    }

    if (airy->parsed()) {
      const Complex z(re, im);
      ctx.params = {{"re", re}, {"im", im}};
      const auto q = airy_eval(z);
      report(ctx, json{{"z", complex_json(z)},
                       {"ai", complex_json(q.ai)},
                       {"ai_prime", complex_json(q.ai_prime)},
                       {"bi", complex_json(q.bi)},
                       {"bi_prime", complex_json(q.bi_prime)},
                       {"est_error", q.est_error}});
    } else if (stat->parsed()) {
      const TrapChoice tc = trap_choice(ctx, unset, st_field, unset);
      if (std::isnan(tc.field)) throw UsageError("stationary needs --field (or field in --config)");
      const OutputSpec spec = parse_out(st_out);
      const GridSpec grid = grid_option(st_grid, "--grid");
      ctx.params["field"] = tc.field;
      ctx.params["grid"] = st_grid;
      if (spec.format == "json") {
        const auto s = resonance_energy(tc.field);
        json j{{"field", s.field},
               {"energy", s.energy},
               {"zeta0", s.zeta0},
               {"coeff_c", s.coeff_c},
               {"log_tail_intensity", s.log_tail_intensity},
               {"first_term_root", s.first_term_root},
               {"first_over_second", s.first_over_second},
               {"log_derivative", s.log_derivative},
               {"shift", s.energy + 0.25},
               {"shift_leading", -5.0 * s.field * s.field}};
        if (!spec.path.empty()) place(ctx, spec, "", j.dump(2) + "\n");
        else report(ctx, j);
      } else {
        const auto p = quasi_bound_profile(tc.field, grid);
        const std::string stem = "stationary_F" + format_number(tc.field);
        if (spec.format == "csv") place(ctx, spec, stem + ".csv", to_csv(profile_table(p)));
        else place(ctx, spec, stem + ".svg", profiles_svg({p}, true, "Quasi-bound stationary state"));
      }
    } else if (pull->parsed() || push->parsed()) {
      const bool pulling = pull->parsed();
      const ResonanceFlags& f = pulling ? pf : sf;
      const TrapChoice tc = trap_choice(ctx, f.epsilon, f.field, f.accel);
      const OutputSpec spec = parse_out(f.out);
      ctx.params["epsilon"] = tc.epsilon;
      const std::string name = pulling ? "pulling" : "pushing";
      if (!f.sweep.empty()) {
        const GridSpec g = grid_option(f.sweep, "--sweep");
        ctx.params["sweep"] = f.sweep;
        if (!(g.min > 0.0)) throw UsageError("--sweep: fields must be > 0");
        std::string csv, svg;
        json rows = json::array();
        if (pulling) {
          const auto sols = pulling_sweep(g.min, g.max, g.n);
          csv = to_csv(pulling_table(sols, tc.epsilon));
          if (spec.format == "svg") svg = pulling_sweep_svg(sols);
        } else {
          const auto st = pushing_sweep(g.min, g.max, g.n);
          csv = to_csv(pushing_table(st, tc.epsilon));
          if (spec.format == "svg") svg = pushing_sweep_svg(st);
        }
        if (spec.format == "csv") place(ctx, spec, name + "_sweep.csv", csv);
        else if (spec.format == "svg") place(ctx, spec, name + "_sweep.svg", svg);
        else {
          const CsvTable t = parse_csv(csv);
          for (const auto& r : t.rows) {
            json row;
            for (std::size_t k = 0; k < r.size(); ++k) row[t.header[k]] = r[k];
            rows.push_back(row);
          }
          if (!spec.path.empty()) place(ctx, spec, "", rows.dump(2) + "\n");
          else report(ctx, rows);
        }
      } else {
        if (std::isnan(tc.field)) throw UsageError(name + " needs --field, --accel or --sweep");
        ctx.params["field"] = tc.field;
        const PhysicalScaling scaling = scaling_choice(ctx, f.scaling);
        WavefunctionProfile profile;
        json j;
        std::string csv;
        const bool want_profile = !f.profile.empty();
        const GridSpec grid = want_profile ? grid_option(f.profile, "--profile") : GridSpec{};
        if (pulling) {
          const auto s = solve_pulling(tc.field);
          const auto m = decay_metrics(s, tc.epsilon, tc.accel);
          j = {{"field", s.field}, {"zeta0", complex_json(s.zeta0)}, {"reE", s.energy.real()},
               {"imE", s.energy.imag()}, {"EI", s.decay_constant()}, {"residual", s.residual},
               {"iterations", s.iterations}, {"seed", to_string(s.seed_used)},
               {"epsilon", tc.epsilon}, {"accel", m.accel}, {"decay_rate", m.decay_rate},
               {"T_scaled", m.lifetime_scaled}, {"vmax_scaled", m.vmax_scaled},
               {"T_weak", m.lifetime_weak}, {"vmax_weak", m.vmax_weak},
               {"vmax_strong", m.vmax_strong}};
          if (m.accel > 0.0)
            j["physical"] = physical_json(scaling, m.lifetime_scaled, m.vmax_scaled, m.accel);
          if (want_profile) profile = pulling_profile(s, grid);
          csv = to_csv(pulling_table({s}, tc.epsilon));
        } else {
          const auto s = solve_pushing(tc.field);
          const auto m = pushing_metrics(s, tc.epsilon, tc.accel);
          const auto n0 = n0_coefficient(s);
          j = {{"field", s.field}, {"zeta0", complex_json(s.zeta0)}, {"reE", s.energy.real()},
               {"imE", s.energy.imag()}, {"EI", s.decay_constant()}, {"residual", s.residual},
               {"iterations", s.iterations}, {"N", s.norm_N}, {"N0", complex_json(s.coeff_N0)},
               {"absN0", std::abs(s.coeff_N0)}, {"absN0_closed", std::abs(n0.closed)},
               {"E_hardwall", hard_wall_energy(s.field)}, {"epsilon", tc.epsilon},
               {"accel", m.accel}, {"decay_rate", m.decay_rate}, {"T_scaled", m.lifetime_scaled},
               {"vmax_scaled", m.vmax_scaled}, {"T_closed", m.lifetime_closed},
               {"vmax_closed", m.vmax_closed}};
          if (m.accel > 0.0)
            j["physical"] = physical_json(scaling, m.lifetime_scaled, m.vmax_scaled, m.accel);
          if (want_profile) profile = pushing_profile(s, grid);
          csv = to_csv(pushing_table({s}, tc.epsilon));
        }
        const std::string stem = name + "_F" + format_number(tc.field);
        if (spec.format == "json") {
          if (!spec.path.empty()) place(ctx, spec, "", j.dump(2) + "\n");
          else report(ctx, j);
        } else if (spec.format == "csv") {
          if (want_profile) place(ctx, spec, stem + "_profile.csv", to_csv(profile_table(profile)));
          else place(ctx, spec, stem + ".csv", csv);
        } else {
          if (!want_profile) throw UsageError("--out svg needs --profile or --sweep");
          place(ctx, spec, stem + "_profile.svg",
                profiles_svg({profile}, false, pulling ? "Pulling eigenmode" : "Pushed eigenstate"));
        }
      }
    } else if (td->parsed()) {
      TdseConfig cfg = td_scenario == "pulling" ? pulling_figure_config() : pushing_figure_config();
      if (ctx.config.contains("tdse")) cfg = tdse_from_json(cfg, ctx.config["tdse"]);
      const TrapChoice tc = trap_choice(ctx, td_eps, td_field, unset);
      if (!std::isnan(tc.field)) cfg.field = tc.field;
      cfg.epsilon = tc.epsilon;
      if (!td_initial.empty()) cfg.initial = initial_state_from_string(td_initial);
      if (!std::isnan(td_tfinal)) cfg.t_final = td_tfinal;
      try {
        validate(cfg);
      } catch (const ConfigError& e) {
        throw UsageError(e.what());
      }
      const OutputSpec spec = parse_out(td_out);
      if (spec.format == "json") throw UsageError("--out for tdse must be a .csv or .svg file");
      ctx.params = {{"scenario", td_scenario}, {"field", cfg.field}, {"epsilon", cfg.epsilon},
                    {"initial", to_string(cfg.initial)}, {"t_final", cfg.t_final},
                    {"n_points", cfg.n_points}, {"dt", cfg.dt}, {"delta_width", cfg.delta_width},
                    {"frame", td_frame}};
      const auto run = evolve(cfg);
      const std::string stem = "tdse_" + td_scenario;
      if (spec.format == "csv") place(ctx, spec, stem + ".csv", to_csv(density_table(run)));
      else place(ctx, spec, stem + ".svg", density_svg(run, td_frame == "lab"));
      if (!td_norms.empty()) place(ctx, parse_out(td_norms), stem + "_norms.csv", to_csv(norms_table(run)));
      json j{{"scenario", td_scenario}, {"field", cfg.field}, {"epsilon", cfg.epsilon},
             {"fitted_gamma", run.fitted_gamma}, {"fit_r2", run.fit_r2},
             {"fit_window", {run.fit_window.first, run.fit_window.second}},
             {"delta_strength", run.delta_strength}};
      try {
        const double expected = cfg.scenario == Scenario::pulling
                                    ? 2.0 * solve_pulling(cfg.field).decay_constant()
                                    : 2.0 * solve_pushing(cfg.field).decay_constant();
        j["gamma_eigenvalue"] = expected;
        j["relative_difference"] = run.fitted_gamma / expected - 1.0;
        j["mode_discrepancy"] = mode_discrepancy(run);
      } catch (const DomainError&) {
      }
      if (!quiet) report(ctx, j);
    } else if (figs->parsed()) {
      std::set<int> wanted;
      std::stringstream ss(which);
      std::string item;
      while (std::getline(ss, item, ',')) {
        int n = 0;
        try {
          n = std::stoi(item);
        } catch (const std::exception&) {
          throw UsageError("--which: '" + item + "' is not a figure number");
        }
        if (!std::set<int>{1, 3, 4, 5, 6, 7}.count(n))
          throw UsageError("--which: figure " + item + " is not produced (choose from 1,3,4,5,6,7)");
        wanted.insert(n);
      }
      if (wanted.empty()) throw UsageError("--which: empty figure list");
      ctx.params["which"] = which;
      const double eps = config_number(ctx.config, "epsilon", 0.5);
      std::vector<std::future<FigureOutput>> jobs;
      for (int n : wanted) {
        jobs.push_back(std::async(std::launch::async, [n, eps] {
          switch (n) {
            case 1: return figure_stationary();
            case 3: return figure_pulling_sweep(eps);
            case 4: return figure_pulling_modes();
            case 5: return figure_tdse(pulling_figure_config(), "fig5");
            case 6: return figure_tdse(pushing_figure_config(), "fig6");
            default: return figure_pushing_modes();
          }
        }));
      }
      for (auto& job : jobs)
        for (const auto& [name, content] : job.get().files) ctx.write(name, content);
    }
    write_manifest(ctx, subcommand);
    note_outputs(ctx);
    return 0;
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const ConfigError& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    err << json{{"error", e.name()}, {"message", e.what()}, {"subcommand", subcommand}}.dump() << "\n";
    return 1;
  } catch (const std::exception& e) {
    err << json{{"error", "InternalError"}, {"message", e.what()}, {"subcommand", subcommand}}.dump()
        << "\n";
    return 1;
  }
}

}  // namespace airytrap
