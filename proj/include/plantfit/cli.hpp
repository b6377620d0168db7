#pragma once

// Command-line orchestration: run configuration, data loading and the fit,
// simulate, landscape and validate commands. Results are JSON, series and
// grids are CSV. Every output file is written to a temporary name first and
// renamed into place.
//
// Exit codes: 0 success, 1 usage or configuration error, 2 data error,
// 3 solver or search error.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "plantfit/domain.hpp"
#include "plantfit/errors.hpp"
#include "plantfit/ingest.hpp"
#include "plantfit/objective.hpp"
#include "plantfit/search.hpp"
#include "plantfit/uc_solver.hpp"

namespace plantfit::cli {

namespace fs = std::filesystem;

enum ExitCode : int { kOk = 0, kUsage = 1, kData = 2, kSolver = 3 };

struct SeriesSource {
  std::string path;
  Resolution resolution = Resolution::half_hourly;
};

struct RunConfig {
  std::string config_path;
  std::string plant_id = "plant";
  std::string fuel_type;
  double epsilon = 0.0;

  SeriesSource electricity;
  SeriesSource fuel;
  SeriesSource carbon;
  SeriesSource production;
  SeriesSource dynamics;

  Timestamp horizon_start{};
  Timestamp horizon_end{};
  double dt = 0.5;

  SolverOptions solver;
  DeConfig de;
  CompassConfig compass;

  // Per-MW(cap) bound overrides for sigma and phi; absolute for eta and nu.
  std::optional<std::pair<double, double>> eta_bounds;
  std::optional<std::pair<double, double>> sigma_bounds_per_cap;
  std::optional<std::pair<double, double>> phi_bounds_per_cap;
  std::optional<std::pair<double, double>> nu_bounds;

  std::optional<bool> initial_committed;
  std::optional<double> initial_power;

  std::string out_dir = "out";
  std::uint64_t seed = 1;
  std::size_t jobs = 1;
};

namespace detail {

inline const std::set<std::string>& known_keys() {
  static const std::set<std::string> keys = {
      "plant_id", "fuel_type", "epsilon_tco2_per_mwh_fuel", "prices", "prices_resolution", "electricity",
      "electricity_resolution", "fuel", "fuel_resolution", "carbon", "carbon_resolution", "production",
      "production_resolution", "dynamics", "dynamics_resolution", "horizon_start", "horizon_end", "dt_hours",
      "power_levels", "solver_tolerance", "de_population", "de_weight", "de_crossover", "de_generations",
      "de_target", "compass_initial_step_fraction", "compass_min_step_fraction", "compass_contraction",
      "compass_max_iterations", "eta_bounds", "sigma_bounds_per_mw_cap", "phi_bounds_per_mw_cap", "nu_bounds",
      "initial_committed", "initial_power_mw", "out_dir", "seed", "jobs"};
  return keys;
}

inline std::pair<double, double> parse_pair(const KeyValueFile& kv, const std::string& key) {
  const std::string v = *kv.get(key);
  const auto comma = v.find(',');
  const auto lo = comma == std::string::npos ? std::nullopt : try_parse_number(std::string_view(v).substr(0, comma));
  const auto hi = comma == std::string::npos ? std::nullopt : try_parse_number(std::string_view(v).substr(comma + 1));
  if (!lo || !hi) throw ConfigError(kv.source + ": '" + key + "' must be 'lower,upper'");
  return {*lo, *hi};
}

inline std::uint64_t parse_count(const KeyValueFile& kv, const std::string& key, std::uint64_t fallback) {
  const double v = kv.number(key, static_cast<double>(fallback));
  if (v < 0.0 || v != std::floor(v)) throw ConfigError(kv.source + ": '" + key + "' must be a non-negative integer");
  return static_cast<std::uint64_t>(v);
}

inline bool parse_bool(const std::string& s, const std::string& key) {
  if (s == "1" || s == "true" || s == "yes") return true;
  if (s == "0" || s == "false" || s == "no") return false;
  throw ConfigError("'" + key + "' must be true or false");
}

}  // namespace detail

/// Reads a run configuration file. Relative data paths resolve against the
/// directory holding the file.
inline RunConfig load_run_config(const std::string& path) {
  const KeyValueFile kv = load_key_values(path);
  for (const auto& [key, value] : kv.values) {
    if (!detail::known_keys().count(key))
      throw ConfigError(path + ":" + std::to_string(kv.lines.at(key)) + ": unknown key '" + key + "'");
  }
  const fs::path base = fs::path(path).parent_path();
  auto resolve = [&](const std::string& p) { return fs::path(p).is_absolute() ? p : (base / p).string(); };
  auto require = [&](const std::string& key) {
    auto v = kv.get(key);
    if (!v || v->empty()) throw ConfigError(path + ": missing required key '" + key + "'");
    return *v;
  };
  auto resolution = [&](const std::string& key, Resolution fallback) {
    const auto v = kv.get(key);
    return v ? parse_resolution(*v) : fallback;
  };

  RunConfig cfg;
  cfg.config_path = path;
  cfg.plant_id = kv.get("plant_id").value_or("plant");
  cfg.fuel_type = kv.get("fuel_type").value_or("");
  cfg.epsilon = kv.number("epsilon_tco2_per_mwh_fuel", std::numeric_limits<double>::quiet_NaN());
  if (std::isnan(cfg.epsilon)) throw ConfigError(path + ": missing required key 'epsilon_tco2_per_mwh_fuel'");
  if (cfg.epsilon < 0.0) throw ConfigError(path + ": epsilon must be >= 0");

  const Resolution price_res = resolution("prices_resolution", Resolution::half_hourly);
  const std::optional<std::string> prices = kv.get("prices");
  auto price_source = [&](const std::string& key) {
    const auto own = kv.get(key);
    if (!own && !prices)
      throw ConfigError(path + ": no source for '" + key + "' (set 'prices' or '" + key + "')");
    return SeriesSource{resolve(own ? *own : *prices), resolution(key + "_resolution", price_res)};
  };
  cfg.electricity = price_source("electricity");
  cfg.fuel = price_source("fuel");
  cfg.carbon = price_source("carbon");
  cfg.production = {resolve(require("production")), resolution("production_resolution", Resolution::half_hourly)};
  cfg.dynamics = {resolve(require("dynamics")), resolution("dynamics_resolution", Resolution::half_hourly)};

  cfg.horizon_start = parse_timestamp(require("horizon_start"));
  cfg.horizon_end = parse_timestamp(require("horizon_end"));
  if (!(cfg.horizon_start < cfg.horizon_end)) throw ConfigError(path + ": horizon_start must precede horizon_end");
  cfg.dt = kv.number("dt_hours", 0.5);

  cfg.solver.power_levels = static_cast<int>(detail::parse_count(kv, "power_levels", 21));
  cfg.solver.tolerance = kv.number("solver_tolerance", 1e-9);
  cfg.de.population = detail::parse_count(kv, "de_population", 32);
  cfg.de.weight = kv.number("de_weight", 0.8);
  cfg.de.crossover = kv.number("de_crossover", 0.9);
  cfg.de.generations = detail::parse_count(kv, "de_generations", 150);
  cfg.de.target = kv.number("de_target", 0.0);
  cfg.compass.initial_step_fraction = kv.number("compass_initial_step_fraction", 0.1);
  cfg.compass.min_step_fraction = kv.number("compass_min_step_fraction", 1e-3);
  cfg.compass.contraction = kv.number("compass_contraction", 0.5);
  cfg.compass.max_iterations = detail::parse_count(kv, "compass_max_iterations", 10000);

  if (kv.has("eta_bounds")) cfg.eta_bounds = detail::parse_pair(kv, "eta_bounds");
  if (kv.has("sigma_bounds_per_mw_cap")) cfg.sigma_bounds_per_cap = detail::parse_pair(kv, "sigma_bounds_per_mw_cap");
  if (kv.has("phi_bounds_per_mw_cap")) cfg.phi_bounds_per_cap = detail::parse_pair(kv, "phi_bounds_per_mw_cap");
  if (kv.has("nu_bounds")) cfg.nu_bounds = detail::parse_pair(kv, "nu_bounds");
  if (kv.has("initial_committed")) cfg.initial_committed = detail::parse_bool(*kv.get("initial_committed"), "initial_committed");
  if (kv.has("initial_power_mw")) cfg.initial_power = kv.number("initial_power_mw", 0.0);

  cfg.out_dir = kv.has("out_dir") ? resolve(*kv.get("out_dir")) : "out";
  cfg.seed = detail::parse_count(kv, "seed", 1);
  cfg.jobs = detail::parse_count(kv, "jobs", 1);

  cfg.solver.check();
  cfg.de.check();
  cfg.compass.check();
  return cfg;
}

/// Loads and aligns every input series named by the configuration.
inline AlignedDataset load_dataset(const RunConfig& cfg) {
  auto load = [](const SeriesSource& src, const char* column, const char* label) {
    return load_series(src.path, ColumnSpec{"timestamp_utc", column}, src.resolution, label);
  };
  RawInputs raw = make_raw_inputs(
      load(cfg.electricity, "electricity_gbp_mwh", "electricity price"), load(cfg.fuel, "fuel_gbp_mwh_fuel", "fuel price"),
      load(cfg.carbon, "carbon_gbp_tco2", "carbon price"), load(cfg.production, "mw", "observed production"),
      load(cfg.dynamics, "mel_mw", "mel"), load(cfg.dynamics, "sel_mw", "sel"),
      load(cfg.dynamics, "ramp_up_mw_per_h", "ramp up"), load(cfg.dynamics, "ramp_dn_mw_per_h", "ramp down"));
  return align(raw, cfg.dt, cfg.horizon_start, cfg.horizon_end);
}

inline FitContext make_fit_context(const RunConfig& cfg, AlignedDataset data) {
  FitContext ctx = make_context(std::move(data.dynamics), std::move(data.market), std::move(data.observed));
  if (cfg.initial_committed) ctx.initial_committed = *cfg.initial_committed;
  if (cfg.initial_power) ctx.initial_power = *cfg.initial_power;
  if (!ctx.initial_committed) ctx.initial_power = 0.0;
  return ctx;
}

inline SearchBounds bounds_for(const RunConfig& cfg, double capacity) {
  SearchBounds b = default_bounds(capacity);
  auto apply = [&](const std::optional<std::pair<double, double>>& o, Param p, double scale) {
    if (!o) return;
    b.lower[static_cast<std::size_t>(p)] = o->first * scale;
    b.upper[static_cast<std::size_t>(p)] = o->second * scale;
  };
  apply(cfg.eta_bounds, Param::eta, 1.0);
  apply(cfg.sigma_bounds_per_cap, Param::sigma, capacity);
  apply(cfg.phi_bounds_per_cap, Param::phi, capacity);
  apply(cfg.nu_bounds, Param::nu, 1.0);
  b.check();
  return b;
}

// ---------------------------------------------------------------------------
// Output

/// Writes `content` to `path` through a temporary file and a rename.
inline void write_file_atomic(const fs::path& path, const std::string& content) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw ConfigError("cannot write " + tmp.string());
    out << content;
    out.flush();
    if (!out) {
      std::error_code ec;
      fs::remove(tmp, ec);
      throw ConfigError("failed writing " + tmp.string());
    }
  }
  fs::rename(tmp, path);
}

inline nlohmann::ordered_json params_json(const PlantParameters& p) {
  nlohmann::ordered_json j;
  j["eta"] = p.eta;
  j["sigma_gbp"] = p.sigma;
  j["phi_gbp_per_h"] = p.phi;
  j["nu_gbp_per_mwh"] = p.nu;
  j["epsilon_tco2_per_mwh_fuel"] = p.epsilon;
  return j;
}

inline nlohmann::ordered_json normalized_json(const NormalizedCosts& n) {
  nlohmann::ordered_json j;
  j["eta"] = n.eta;
  j["sigma_gbp_per_mw_cap"] = n.sigma_per_mw_cap;
  j["phi_gbp_per_h_per_mw_cap"] = n.phi_per_mw_cap;
  j["nu_gbp_per_mwh"] = n.nu;
  return j;
}

inline std::string trace_csv(const std::vector<TraceRecord>& trace) {
  std::ostringstream out;
  out << "evaluation,eta,sigma,phi,nu,sse\n";
  for (const auto& r : trace) {
    out << r.index << ',' << format_number(r.params.eta) << ',' << format_number(r.params.sigma) << ','
        << format_number(r.params.phi) << ',' << format_number(r.params.nu) << ',' << format_number(r.sse) << '\n';
  }
  return out.str();
}

// ---------------------------------------------------------------------------
// Commands

/// Loads the inputs and reports a short summary; throws on any data error.
inline std::string cmd_validate(const RunConfig& cfg) {
  const AlignedDataset data = load_dataset(cfg);
  const FitContext ctx = make_fit_context(cfg, data);
  std::ostringstream out;
  out << "plant " << cfg.plant_id << ": " << ctx.horizon() << " periods of " << cfg.dt << " h from "
      << format_timestamp(cfg.horizon_start) << ", capacity " << ctx.dynamics.capacity() << " MW, ramps "
      << ctx.dynamics.ramp_up() << "/" << ctx.dynamics.ramp_dn() << " MW/h, initial state "
      << (ctx.initial_committed ? "on" : "off") << "\n";
  return out.str();
}

inline FitResult cmd_fit(const RunConfig& cfg) {
  const FitContext ctx = make_fit_context(cfg, load_dataset(cfg));
  FitOptions opts;
  opts.bounds = bounds_for(cfg, ctx.dynamics.capacity());
  opts.de = cfg.de;
  opts.de.seed = cfg.seed;
  opts.compass = cfg.compass;
  opts.solver = cfg.solver;
  opts.jobs = cfg.jobs;
  const FitResult res = fit(ctx, cfg.epsilon, opts);
  const Schedule fitted = solve_uc(ctx.instance(res.best), cfg.solver);

  nlohmann::ordered_json j;
  j["plant_id"] = cfg.plant_id;
  j["fuel_type"] = cfg.fuel_type;
  j["horizon_start"] = format_timestamp(cfg.horizon_start);
  j["horizon_end"] = format_timestamp(cfg.horizon_end);
  j["dt_hours"] = cfg.dt;
  j["periods"] = ctx.horizon();
  j["capacity_mw"] = res.capacity;
  j["seed"] = cfg.seed;
  j["best"] = params_json(res.best);
  j["best_per_mw_cap"] = normalized_json(res.normalized);
  j["sse_mw2"] = res.sse;
  j["rms_mw"] = res.rms;
  j["evaluations"] = res.evaluations;
  j["de_generations"] = res.de_generations;
  j["de_best_sse_mw2"] = res.de_best_sse;
  j["compass_iterations"] = res.compass_iterations;
  j["uc_profit_gbp"] = fitted.profit;
  j["initial_committed"] = ctx.initial_committed;
  j["initial_power_mw"] = ctx.initial_power;

  std::ostringstream sched;
  sched << "timestamp_utc,observed_mw,fitted_mw\n";
  for (std::size_t t = 0; t < ctx.horizon(); ++t) {
    sched << format_timestamp(ctx.market.grid()[t]) << ',' << format_number(ctx.observed.power()[t]) << ','
          << format_number(fitted.power[t]) << '\n';
  }

  const fs::path out(cfg.out_dir);
  write_file_atomic(out / "trace.csv", trace_csv(res.trace));
  write_file_atomic(out / "schedule.csv", sched.str());
  write_file_atomic(out / "fit_result.json", j.dump(2) + "\n");
  return res;
}

/// Optimal schedule for explicit parameters; written as schedule.csv and
/// simulate_result.json.
inline Schedule cmd_simulate(const RunConfig& cfg, const PlantParameters& params) {
  const FitContext ctx = make_fit_context(cfg, load_dataset(cfg));
  check_parameter_invariants(params);
  const UcInstance inst = ctx.instance(params);
  const Schedule s = solve_uc(inst, cfg.solver);
  const auto violations = validate_schedule(s, inst);

  std::ostringstream csv;
  csv << "timestamp_utc,power_mw,committed,started\n";
  for (std::size_t t = 0; t < s.size(); ++t) {
    csv << format_timestamp(ctx.market.grid()[t]) << ',' << format_number(s.power[t]) << ','
        << static_cast<int>(s.committed[t]) << ',' << static_cast<int>(s.started[t]) << '\n';
  }
  nlohmann::ordered_json j;
  j["plant_id"] = cfg.plant_id;
  j["params"] = params_json(params);
  j["params_per_mw_cap"] = normalized_json(normalize_costs(params, ctx.dynamics.capacity()));
  j["capacity_mw"] = ctx.dynamics.capacity();
  j["periods"] = s.size();
  j["profit_gbp"] = s.profit;
  j["violations"] = violations.size();

  const fs::path out(cfg.out_dir);
  write_file_atomic(out / "schedule.csv", csv.str());
  write_file_atomic(out / "simulate_result.json", j.dump(2) + "\n");
  return s;
}

struct AxisRange {
  double lo = 0.0;
  double hi = 0.0;
  std::size_t count = 0;
};

/// Parses "lo:hi:n".
inline AxisRange parse_axis_range(const std::string& text) {
  const auto a = text.find(':');
  const auto b = a == std::string::npos ? std::string::npos : text.find(':', a + 1);
  if (b == std::string::npos) throw ConfigError("axis range must be 'lo:hi:n', got '" + text + "'");
  const auto lo = try_parse_number(std::string_view(text).substr(0, a));
  const auto hi = try_parse_number(std::string_view(text).substr(a + 1, b - a - 1));
  const auto n = try_parse_number(std::string_view(text).substr(b + 1));
  if (!lo || !hi || !n || *n < 1.0 || *n != std::floor(*n))
    throw ConfigError("axis range must be 'lo:hi:n', got '" + text + "'");
  return {*lo, *hi, static_cast<std::size_t>(*n)};
}

struct LandscapeRequest {
  std::string axes;  // "eta,sigma"
  AxisRange range1;
  AxisRange range2;
  PlantParameters fixed;  // absolute units
  bool per_cap = false;   // sigma/phi axis values given per MW(cap)
};

inline std::pair<Param, Param> parse_axes(const std::string& axes) {
  const auto comma = axes.find(',');
  if (comma == std::string::npos) throw ConfigError("axes must be two parameter names, e.g. 'eta,sigma'");
  const Param a = param_from_name(std::string_view(axes).substr(0, comma));
  const Param b = param_from_name(std::string_view(axes).substr(comma + 1));
  if (a == b) throw ConfigError("axes must differ");
  return {a, b};
}

inline LandscapeSlice cmd_landscape(const RunConfig& cfg, const LandscapeRequest& req) {
  const auto [p1, p2] = parse_axes(req.axes);
  const FitContext ctx = make_fit_context(cfg, load_dataset(cfg));
  const double cap = ctx.dynamics.capacity();
  auto scale = [&](Param p) { return req.per_cap && (p == Param::sigma || p == Param::phi) ? cap : 1.0; };
  LandscapeAxis a1{p1, linspace(req.range1.lo, req.range1.hi, req.range1.count)};
  LandscapeAxis a2{p2, linspace(req.range2.lo, req.range2.hi, req.range2.count)};
  LandscapeAxis abs1 = a1, abs2 = a2;
  for (double& v : abs1.values) v *= scale(p1);
  for (double& v : abs2.values) v *= scale(p2);

  const LandscapeSlice slice = landscape_slice(abs1, abs2, req.fixed, ctx, cfg.solver, cfg.jobs);

  std::ostringstream csv;
  csv << param_name(p1) << ',' << param_name(p2) << ",rms_mw\n";
  for (std::size_t i = 0; i < a1.values.size(); ++i) {
    for (std::size_t j = 0; j < a2.values.size(); ++j) {
      csv << format_number(a1.values[i]) << ',' << format_number(a2.values[j]) << ','
          << format_number(slice.rms[i][j]) << '\n';
    }
  }
  write_file_atomic(fs::path(cfg.out_dir) / "landscape.csv", csv.str());
  return slice;
}

// ---------------------------------------------------------------------------
// Entry point

inline int run(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  CLI::App app{"Fit thermal power plant parameters to observed production"};
  app.require_subcommand(1);

  std::string config_path;
  std::optional<std::string> out_dir;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> jobs;
  std::optional<double> dt;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "Run configuration file")->required();
    sub->add_option("--out", out_dir, "Output directory");
    sub->add_option("--seed", seed, "Random seed for the search");
    sub->add_option("--jobs", jobs, "Maximum concurrent fitness evaluations")->check(CLI::PositiveNumber);
    sub->add_option("--dt", dt, "Settlement period length in hours")->check(CLI::PositiveNumber);
  };

  CLI::App* fit_cmd = app.add_subcommand("fit", "Fit eta, sigma, phi and nu to observed production");
  CLI::App* sim_cmd = app.add_subcommand("simulate", "Optimal schedule for given parameters");
  CLI::App* land_cmd = app.add_subcommand("landscape", "RMS error over a two-parameter grid");
  CLI::App* val_cmd = app.add_subcommand("validate", "Load and check the inputs only");
  for (CLI::App* sub : {fit_cmd, sim_cmd, land_cmd, val_cmd}) add_common(sub);

  double eta = std::numeric_limits<double>::quiet_NaN();
  double sigma = 0.0, phi = 0.0, nu = 0.0;
  bool per_cap = false;
  for (CLI::App* sub : {sim_cmd, land_cmd}) {
    sub->add_option("--eta", eta, "Thermal efficiency");
    sub->add_option("--sigma", sigma, "Start-up cost (GBP, or GBP/MW(cap) with --per-cap)");
    sub->add_option("--phi", phi, "Fixed cost (GBP/h, or GBP/h/MW(cap) with --per-cap)");
    sub->add_option("--nu", nu, "Variable cost (GBP/MWh)");
    sub->add_flag("--per-cap", per_cap, "sigma and phi values are per MW of capacity");
  }
  std::string axes, range1, range2;
  land_cmd->add_option("--axes", axes, "Two parameter names, e.g. eta,sigma")->required();
  land_cmd->add_option("--range1", range1, "First axis grid lo:hi:n")->required();
  land_cmd->add_option("--range2", range2, "Second axis grid lo:hi:n")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    RunConfig cfg = load_run_config(config_path);
    if (out_dir) cfg.out_dir = *out_dir;
    if (seed) cfg.seed = *seed;
    if (jobs) cfg.jobs = *jobs;
    if (dt) cfg.dt = *dt;

    if (*val_cmd) {
      out << cmd_validate(cfg);
    } else if (*fit_cmd) {
      const FitResult r = cmd_fit(cfg);
      out << "eta=" << r.best.eta << " sigma=" << r.normalized.sigma_per_mw_cap << " GBP/MW(cap) phi="
          << r.normalized.phi_per_mw_cap << " GBP/h/MW(cap) nu=" << r.best.nu << " GBP/MWh rms=" << r.rms
          << " MW (" << r.evaluations << " evaluations)\n";
    } else {
      PlantParameters params{eta, sigma, phi, nu, cfg.epsilon};
      if (*sim_cmd) {
        if (std::isnan(eta)) throw ConfigError("--eta is required");
        if (per_cap) {
          const double cap = make_fit_context(cfg, load_dataset(cfg)).dynamics.capacity();
          params = denormalize_costs({eta, sigma, phi, nu}, cap, cfg.epsilon);
        }
        const Schedule s = cmd_simulate(cfg, params);
        out << "profit=" << format_number(s.profit) << " GBP over " << s.size() << " periods\n";
      } else {
        const auto [p1, p2] = parse_axes(axes);
        const bool eta_on_axis = p1 == Param::eta || p2 == Param::eta;
        if (std::isnan(eta) && !eta_on_axis) throw ConfigError("--eta is required unless eta is an axis");
        if (std::isnan(params.eta)) params.eta = 0.5;
        LandscapeRequest req{axes, parse_axis_range(range1), parse_axis_range(range2), params, per_cap};
        if (per_cap) {
          const double cap = make_fit_context(cfg, load_dataset(cfg)).dynamics.capacity();
          req.fixed = denormalize_costs({params.eta, sigma, phi, nu}, cap, cfg.epsilon);
        }
        const LandscapeSlice s = cmd_landscape(cfg, req);
        out << "wrote " << s.axis1.values.size() * s.axis2.values.size() << " grid points\n";
      }
    }
    return kOk;
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const DataError& e) {
    err << "data error: " << e.what() << "\n";
    return kData;
  } catch (const SolverError& e) {
    err << "solver error: " << e.what() << "\n";
    return kSolver;
  } catch (const fs::filesystem_error& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }
}

}  // namespace plantfit::cli
