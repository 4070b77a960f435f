#include "gravcat/cli.hpp"

#include <charconv>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <optional>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "gravcat/error.hpp"
#include "gravcat/sweep.hpp"
#include "gravcat/verify.hpp"
#include "gravcat/weak_measurement.hpp"

namespace gravcat::cli {

namespace {

struct GlobalOptions {
  std::string output;
  std::optional<unsigned> jobs;
  std::string engine = "closed_form";
  std::string format;
};

struct PointOptions {
  std::optional<double> omega;
  std::optional<double> gamma;
  std::optional<double> temp;
  std::optional<double> p;
  bool allow_zero_omega = false;
};

void write_error(std::ostream& err, std::string_view code, std::string_view message) {
  const nlohmann::json doc = {
      {"schema_version", 1}, {"error", code}, {"message", message}};
  err << doc.dump() << '\n';
}

void add_point_options(CLI::App& cmd, PointOptions& opts) {
  cmd.add_option("--omega", opts.omega, "Energy gap omega");
  cmd.add_option("--gamma", opts.gamma, "Gravitational coupling gamma");
  cmd.add_option("--temp", opts.temp, "Temperature T (k_B = 1)");
  cmd.add_option("--p", opts.p, "Weak-measurement strength in [0, 1]");
  cmd.add_flag("--allow-zero-omega", opts.allow_zero_omega,
               "Accept omega = 0 (level crossing)");
}

double require_value(const std::optional<double>& value, std::string_view flag) {
  if (!value) {
    throw Error(ErrorCode::InvalidParameter,
                "missing required option " + std::string(flag));
  }
  return *value;
}

GravcatParams point_params(const PointOptions& opts) {
  GravcatParams params;
  params.omega = require_value(opts.omega, "--omega");
  params.gamma = require_value(opts.gamma, "--gamma");
  params.temperature = require_value(opts.temp, "--temp");
  return params;
}

unsigned resolve_jobs(const GlobalOptions& global) {
  if (global.jobs) return *global.jobs;
  if (const char* env = std::getenv("GRAVCAT_JOBS"); env && *env) {
    unsigned jobs = 0;
    const std::string_view text(env);
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), jobs);
    if (ec != std::errc() || ptr != text.data() + text.size()) {
      throw Error(ErrorCode::InvalidParameter,
                  "GRAVCAT_JOBS must be a non-negative integer");
    }
    return jobs;
  }
  return 0;
}

// Writes either to the --output file or to `out`.
void emit(const GlobalOptions& global, std::ostream& out,
          const std::function<void(std::ostream&)>& body) {
  if (global.output.empty() || global.output == "-") {
    body(out);
    return;
  }
  std::ofstream file(global.output, std::ios::binary);
  if (!file) {
    throw Error(ErrorCode::InvalidParameter, "cannot open output file " + global.output);
  }
  body(file);
}

std::string grid_format(const GlobalOptions& global) {
  const std::string format = global.format.empty() ? "csv" : global.format;
  if (format != "csv" && format != "json") {
    throw Error(ErrorCode::InvalidParameter,
                "unknown format '" + format + "' (expected csv or json)");
  }
  return format;
}

void write_grid(const GlobalOptions& global, std::ostream& out, const SweepGrid& grid) {
  const std::string format = grid_format(global);
  emit(global, out, [&](std::ostream& os) {
    if (format == "csv") {
      write_csv(grid, os);
    } else {
      write_json(grid, os);
    }
  });
}

int cmd_capacity(const GlobalOptions& global, const PointOptions& opts,
                 std::ostream& out) {
  const GravcatParams params = point_params(opts);
  const Engine engine = parse_engine(global.engine);
  const ParamPolicy policy{opts.allow_zero_omega};
  const CapacityReport report = evaluate_capacity(params, opts.p, engine, policy);
  const std::string json = capacity_json(params, report, to_string(engine));
  emit(global, out, [&](std::ostream& os) { os << json << '\n'; });
  return kExitOk;
}

FixedValues fixed_from(const PointOptions& opts) {
  FixedValues fixed;
  if (opts.omega) fixed.emplace_back(Param::Omega, *opts.omega);
  if (opts.gamma) fixed.emplace_back(Param::Gamma, *opts.gamma);
  if (opts.temp) fixed.emplace_back(Param::Temperature, *opts.temp);
  if (opts.p) fixed.emplace_back(Param::Strength, *opts.p);
  return fixed;
}

int cmd_sweep(const GlobalOptions& global, const PointOptions& opts,
              const std::string& x, const std::string& y, std::ostream& out) {
  SweepConfig config;
  config.x = parse_axis(x);
  config.y = parse_axis(y);
  config.fixed = fixed_from(opts);
  config.engine = parse_engine(global.engine);
  config.policy = ParamPolicy{opts.allow_zero_omega};
  config.jobs = resolve_jobs(global);
  grid_format(global);
  write_grid(global, out, run_sweep(config));
  return kExitOk;
}

AxisSpec override_axis(const AxisSpec& preset, const std::string& text,
                       std::string_view which) {
  if (text.empty()) return preset;
  const AxisSpec axis = parse_axis(text);
  if (axis.name != preset.name) {
    throw Error(ErrorCode::InvalidParameter,
                "figure " + std::string(which) + " axis is " +
                    std::string(to_string(preset.name)) + ", not " +
                    std::string(to_string(axis.name)));
  }
  return axis;
}

int cmd_figure(const GlobalOptions& global, const std::string& id,
               const std::string& x, const std::string& y, const std::string& sidecar,
               std::ostream& out) {
  SweepConfig config = figure_config(id);
  config.x = override_axis(config.x, x, "x");
  config.y = override_axis(config.y, y, "y");
  config.engine = parse_engine(global.engine);
  config.jobs = resolve_jobs(global);
  grid_format(global);
  const SweepGrid grid = run_sweep(config);
  write_grid(global, out, grid);

  std::string sidecar_path = sidecar;
  if (sidecar_path.empty() && !global.output.empty() && global.output != "-")
    sidecar_path = global.output + ".json";
  if (!sidecar_path.empty()) {
    std::ofstream file(sidecar_path, std::ios::binary);
    if (!file)
      throw Error(ErrorCode::InvalidParameter, "cannot open sidecar file " + sidecar_path);
    write_sidecar(grid, id, file);
  }
  return kExitOk;
}

int cmd_optimize(const GlobalOptions& global, const PointOptions& opts,
                 std::ostream& out) {
  const GravcatParams params = point_params(opts);
  const ParamPolicy policy{opts.allow_zero_omega};
  const StrengthOptimum best = optimize_strength(params, policy);
  const double chi_zero = capacity_wm_closed_form(params, 0.0, policy).chi;
  const nlohmann::json doc = {
      {"schema_version", 1},
      {"omega", params.omega},
      {"gamma", params.gamma},
      {"temperature", params.temperature},
      {"p_star", best.p_star},
      {"chi_star", best.chi_star},
      {"chi_at_zero", chi_zero},
      {"gain", best.chi_star - chi_zero},
  };
  emit(global, out, [&](std::ostream& os) { os << doc.dump(2) << '\n'; });
  return kExitOk;
}

int cmd_verify(const GlobalOptions& global, std::int64_t samples, std::uint64_t seed,
               std::ostream& out) {
  if (samples < 1) {
    throw Error(ErrorCode::InvalidParameter, "samples must be at least 1");
  }
  const VerificationReport report =
      run_verification(static_cast<std::uint64_t>(samples), seed);
  emit(global, out, [&](std::ostream& os) { write_json(report, os); });
  return report.passed() ? kExitOk : kExitVerificationFailed;
}

}  // namespace

std::string capacity_json(const GravcatParams& params, const CapacityReport& report,
                          std::string_view engine) {
  nlohmann::json doc = {
      {"schema_version", 1},
      {"engine", engine},
      {"omega", params.omega},
      {"gamma", params.gamma},
      {"temperature", params.temperature},
      {"chi", report.chi},
      {"entropy_state", report.entropy_state},
      {"entropy_average", report.entropy_average},
      {"state_spectrum", report.state_spectrum},
      {"advantage", to_string(report.advantage)},
      {"clamp_warning", report.clamp_warning},
  };
  if (report.weak_measurement) {
    doc["p"] = report.weak_measurement->strength;
    doc["success_probability"] = report.weak_measurement->success_probability;
  }
  return doc.dump(2);
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Dense-coding capacity of two-qubit gravitational cat thermal states",
               std::string(kToolName)};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_version_flag("--version", std::string(kToolVersion));

  GlobalOptions global;
  app.add_option("--output,-o", global.output, "Write results to this file");
  app.add_option("--jobs", global.jobs, "Worker threads (default: GRAVCAT_JOBS or all)");
  app.add_option("--engine", global.engine, "closed_form or numeric");
  app.add_option("--format", global.format, "csv or json (grid output)");

  PointOptions point;
  auto* capacity = app.add_subcommand("capacity", "Capacity at one parameter point");
  add_point_options(*capacity, point);

  PointOptions sweep_fixed;
  std::string sweep_x;
  std::string sweep_y;
  auto* sweep = app.add_subcommand("sweep", "Capacity over a 2-D parameter grid (CSV)");
  sweep->add_option("--x", sweep_x, "x axis as name:start:stop:count")->required();
  sweep->add_option("--y", sweep_y, "y axis as name:start:stop:count")->required();
  add_point_options(*sweep, sweep_fixed);

  std::string figure_id;
  std::string figure_x;
  std::string figure_y;
  std::string sidecar;
  auto* figure = app.add_subcommand("figure", "Preset sweep for a figure id (2a ... 6b)");
  figure->add_option("id", figure_id, "Figure id")->required();
  figure->add_option("--x", figure_x, "Override the x axis range");
  figure->add_option("--y", figure_y, "Override the y axis range");
  figure->add_option("--sidecar", sidecar,
                     "Configuration JSON path (default: <output>.json)");

  PointOptions opt_point;
  auto* optimize = app.add_subcommand("optimize", "Best weak-measurement strength");
  add_point_options(*optimize, opt_point);

  std::int64_t samples = 1000;
  std::uint64_t seed = 42;
  auto* verify = app.add_subcommand("verify", "Cross-check closed forms against numerics");
  verify->add_option("--samples", samples, "Number of random draws");
  verify->add_option("--seed", seed, "SplitMix64 seed");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  if (!reversed.empty()) reversed.pop_back();  // program name

  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::CallForVersion&) {
    out << kToolVersion << '\n';
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    write_error(err, "usage", e.what());
    return kExitUsage;
  }

  try {
    if (*capacity) return cmd_capacity(global, point, out);
    if (*sweep) return cmd_sweep(global, sweep_fixed, sweep_x, sweep_y, out);
    if (*figure) return cmd_figure(global, figure_id, figure_x, figure_y, sidecar, out);
    if (*optimize) {
      if (opt_point.p)
        throw Error(ErrorCode::InvalidParameter, "optimize does not take --p");
      return cmd_optimize(global, opt_point, out);
    }
    if (*verify) return cmd_verify(global, samples, seed, out);
  } catch (const Error& e) {
    write_error(err, to_string(e.code()), e.what());
    return kExitUsage;
  } catch (const std::exception& e) {
    write_error(err, "internal", e.what());
    return kExitUsage;
  }
  write_error(err, "usage", "no subcommand given");
  return kExitUsage;
}

}  // namespace gravcat::cli
