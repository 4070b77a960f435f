#include "gravcat/sweep.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <ctime>
#include <ostream>
#include <thread>

#include "json.hpp"

#include "gravcat/error.hpp"
#include "gravcat/weak_measurement.hpp"

namespace gravcat {

namespace {

constexpr std::array kAllParams = {Param::Omega, Param::Gamma,
                                   Param::Temperature, Param::Strength};
constexpr double kRangeSlack = 1e-10;

[[noreturn]] void invalid(const std::string& message) {
  throw Error(ErrorCode::InvalidParameter, message);
}

double parse_double(std::string_view text, std::string_view what) {
  double value = 0.0;
  const auto* first = text.data();
  const auto* last = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last || text.empty())
    invalid("cannot parse " + std::string(what) + " '" + std::string(text) + "'");
  return value;
}

void set_param(GravcatParams& params, std::optional<double>& p, Param name,
               double value) {
  switch (name) {
    case Param::Omega: params.omega = value; break;
    case Param::Gamma: params.gamma = value; break;
    case Param::Temperature: params.temperature = value; break;
    case Param::Strength: p = value; break;
  }
}

unsigned resolve_jobs(unsigned requested, std::size_t cells) {
  unsigned jobs = requested;
  if (jobs == 0) jobs = std::max(1u, std::thread::hardware_concurrency());
  return static_cast<unsigned>(
      std::min<std::size_t>(jobs, std::max<std::size_t>(cells, 1)));
}

std::string fixed_text(const FixedValues& fixed) {
  std::string text;
  for (const auto& [name, value] : fixed) {
    if (!text.empty()) text += ',';
    text += std::string(to_string(name)) + "=" + format_number(value);
  }
  return text;
}

nlohmann::json axis_json(const AxisSpec& axis) {
  return {{"name", to_string(axis.name)},
          {"start", axis.start},
          {"stop", axis.stop},
          {"count", axis.count}};
}

nlohmann::json fixed_json(const FixedValues& fixed) {
  nlohmann::json out = nlohmann::json::object();
  for (const auto& [name, value] : fixed) out[std::string(to_string(name))] = value;
  return out;
}

}  // namespace

std::string_view to_string(Param param) noexcept {
  switch (param) {
    case Param::Omega: return "omega";
    case Param::Gamma: return "gamma";
    case Param::Temperature: return "T";
    case Param::Strength: return "p";
  }
  return "?";
}

Param parse_param(std::string_view name) {
  if (name == "omega") return Param::Omega;
  if (name == "gamma") return Param::Gamma;
  if (name == "T" || name == "temp") return Param::Temperature;
  if (name == "p") return Param::Strength;
  invalid("unknown parameter '" + std::string(name) +
          "' (expected omega, gamma, T or p)");
}

std::string_view to_string(Engine engine) noexcept {
  return engine == Engine::ClosedForm ? "closed_form" : "numeric";
}

Engine parse_engine(std::string_view name) {
  if (name == "closed_form") return Engine::ClosedForm;
  if (name == "numeric") return Engine::Numeric;
  invalid("unknown engine '" + std::string(name) +
          "' (expected closed_form or numeric)");
}

void AxisSpec::validate(ParamPolicy policy) const {
  const std::string label(to_string(name));
  if (!std::isfinite(start) || !std::isfinite(stop))
    invalid("axis " + label + " bounds must be finite");
  if (count < 2) invalid("axis " + label + " needs at least 2 points");
  if (!(start < stop)) invalid("axis " + label + " needs start < stop");
  switch (name) {
    case Param::Omega:
      if (policy.allow_zero_omega ? start < 0.0 : start <= 0.0)
        invalid("axis omega must stay positive");
      break;
    case Param::Gamma:
      if (start < 0.0) invalid("axis gamma must stay non-negative");
      break;
    case Param::Temperature:
      if (start <= 0.0) invalid("axis T: temperature must be positive");
      if (start < kMinTemperature) invalid("axis T must start at 1e-6 or above");
      break;
    case Param::Strength:
      if (start < 0.0 || stop > 1.0) invalid("axis p must lie within [0, 1]");
      break;
  }
}

double AxisSpec::value(int index) const {
  if (index == count - 1) return stop;
  return start + (stop - start) * static_cast<double>(index) /
                     static_cast<double>(count - 1);
}

std::vector<double> AxisSpec::values() const {
  std::vector<double> out(static_cast<std::size_t>(std::max(count, 0)));
  for (int i = 0; i < count; ++i) out[static_cast<std::size_t>(i)] = value(i);
  return out;
}

AxisSpec parse_axis(std::string_view text) {
  std::array<std::string_view, 4> parts;
  std::size_t n = 0;
  std::size_t begin = 0;
  while (true) {
    const std::size_t colon = text.find(':', begin);
    if (n == parts.size()) invalid("axis '" + std::string(text) + "' has too many fields");
    parts[n++] = text.substr(begin, colon == std::string_view::npos
                                        ? std::string_view::npos
                                        : colon - begin);
    if (colon == std::string_view::npos) break;
    begin = colon + 1;
  }
  if (n != 4)
    invalid("axis '" + std::string(text) + "' must look like name:start:stop:count");

  AxisSpec axis;
  axis.name = parse_param(parts[0]);
  axis.start = parse_double(parts[1], "axis start");
  axis.stop = parse_double(parts[2], "axis stop");
  int count = 0;
  const auto [ptr, ec] =
      std::from_chars(parts[3].data(), parts[3].data() + parts[3].size(), count);
  if (ec != std::errc() || ptr != parts[3].data() + parts[3].size() ||
      parts[3].empty())
    invalid("cannot parse axis count '" + std::string(parts[3]) + "'");
  axis.count = count;
  return axis;
}

void SweepConfig::validate() const {
  x.validate(policy);
  y.validate(policy);
  if (x.name == y.name) invalid("x and y axes must name different parameters");
  for (const Param name : kAllParams) {
    int covered = (x.name == name) + (y.name == name);
    for (const auto& entry : fixed) covered += entry.first == name;
    if (covered > 1)
      invalid("parameter " + std::string(to_string(name)) + " is given more than once");
    if (covered == 0 && name != Param::Strength)
      invalid("parameter " + std::string(to_string(name)) +
              " needs a fixed value or an axis");
  }
}

CapacityReport evaluate_capacity(const GravcatParams& params,
                                 std::optional<double> p, Engine engine,
                                 ParamPolicy policy) {
  if (engine == Engine::ClosedForm) {
    return p ? capacity_wm_closed_form(params, *p, policy)
             : capacity_closed_form(params, policy);
  }
  const DensityMatrix rho =
      gibbs_numeric(build_hamiltonian(params, policy), params.temperature);
  if (!p) return capacity_numeric(rho);
  const PostSelectedState post = apply_qwm(rho, *p);
  CapacityReport report = capacity_numeric(post.state);
  report.weak_measurement = WeakMeasurementInfo{*p, post.success_probability};
  return report;
}

SweepGrid run_sweep(const SweepConfig& config) {
  config.validate();

  SweepGrid grid;
  grid.x = config.x;
  grid.y = config.y;
  grid.fixed = config.fixed;
  std::sort(grid.fixed.begin(), grid.fixed.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  grid.engine = config.engine;
  grid.timestamp = utc_timestamp();

  GravcatParams base;
  std::optional<double> base_p;
  for (const auto& [name, value] : grid.fixed) set_param(base, base_p, name, value);

  const std::vector<double> xs = config.x.values();
  const std::vector<double> ys = config.y.values();
  const std::size_t cells = xs.size() * ys.size();
  grid.values.assign(cells, 0.0);
  std::vector<std::string> errors(cells);

  std::atomic<std::size_t> next{0};
  const auto worker = [&] {
    for (std::size_t cell = next++; cell < cells; cell = next++) {
      const std::size_t ix = cell % xs.size();
      const std::size_t iy = cell / xs.size();
      GravcatParams params = base;
      std::optional<double> p = base_p;
      set_param(params, p, config.x.name, xs[ix]);
      set_param(params, p, config.y.name, ys[iy]);
      try {
        grid.values[cell] =
            evaluate_capacity(params, p, config.engine, config.policy).chi;
      } catch (const std::exception& e) {
        errors[cell] = e.what();
      }
    }
  };

  const unsigned jobs = resolve_jobs(config.jobs, cells);
  if (jobs <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(jobs);
    for (unsigned j = 0; j < jobs; ++j) pool.emplace_back(worker);
  }

  for (std::size_t cell = 0; cell < cells; ++cell) {
    if (errors[cell].empty()) continue;
    const std::size_t ix = cell % xs.size();
    const std::size_t iy = cell / xs.size();
    invalid("cell (x=" + std::to_string(ix) + ", y=" + std::to_string(iy) + ") " +
            std::string(to_string(config.x.name)) + "=" + format_number(xs[ix]) +
            " " + std::string(to_string(config.y.name)) + "=" +
            format_number(ys[iy]) + ": " + errors[cell]);
  }
  return grid;
}

std::string format_number(double value) {
  std::array<char, 64> buffer{};
  const auto [ptr, ec] =
      std::to_chars(buffer.data(), buffer.data() + buffer.size(), value);
  return std::string(buffer.data(), ptr);
}

void write_csv(const SweepGrid& grid, std::ostream& out) {
  for (std::size_t k = 0; k < grid.values.size(); ++k) {
    const double v = grid.values[k];
    if (!(v >= -kRangeSlack && v <= 2.0 + kRangeSlack)) {
      throw Error(ErrorCode::InvalidState,
                  "capacity " + format_number(v) + " at cell " +
                      std::to_string(k) + " is outside [0, 2]");
    }
  }
  out << "# " << kToolName << " v" << grid.tool_version
      << " engine=" << to_string(grid.engine)
      << " fixed=" << fixed_text(grid.fixed) << '\n';
  out << "y\\x";
  for (int ix = 0; ix < grid.x.count; ++ix) out << ',' << format_number(grid.x.value(ix));
  out << '\n';
  for (int iy = 0; iy < grid.y.count; ++iy) {
    out << format_number(grid.y.value(iy));
    for (int ix = 0; ix < grid.x.count; ++ix) out << ',' << format_number(grid.at(ix, iy));
    out << '\n';
  }
}

void write_json(const SweepGrid& grid, std::ostream& out) {
  nlohmann::json rows = nlohmann::json::array();
  for (int iy = 0; iy < grid.y.count; ++iy) {
    nlohmann::json row = nlohmann::json::array();
    for (int ix = 0; ix < grid.x.count; ++ix) row.push_back(grid.at(ix, iy));
    rows.push_back(std::move(row));
  }
  const nlohmann::json doc = {
      {"schema_version", 1},
      {"tool_version", grid.tool_version},
      {"engine", to_string(grid.engine)},
      {"x_name", to_string(grid.x.name)},
      {"x_values", grid.x.values()},
      {"y_name", to_string(grid.y.name)},
      {"y_values", grid.y.values()},
      {"fixed", fixed_json(grid.fixed)},
      {"values", std::move(rows)},
      {"timestamp", grid.timestamp},
  };
  out << doc.dump(2) << '\n';
}

AxisSpec default_axis(Param name) {
  switch (name) {
    case Param::Omega: return {name, 0.01, 3.0, 200};
    case Param::Gamma: return {name, 0.0, 3.0, 200};
    case Param::Temperature: return {name, 0.01, 2.0, 200};
    case Param::Strength: return {name, 0.0, 0.999, 200};
  }
  return {};
}

SweepConfig figure_config(std::string_view id) {
  using enum Param;
  const auto make = [](Param x, Param y, FixedValues fixed) {
    SweepConfig config;
    config.x = default_axis(x);
    config.y = default_axis(y);
    config.fixed = std::move(fixed);
    return config;
  };
  if (id == "2a") return make(Gamma, Omega, {{Temperature, 0.01}});
  if (id == "2b") return make(Gamma, Omega, {{Temperature, 1.0}});
  if (id == "3a") return make(Temperature, Omega, {{Gamma, 1.0}});
  if (id == "3b") return make(Temperature, Omega, {{Gamma, 3.0}});
  if (id == "4a") return make(Temperature, Gamma, {{Omega, 1.0}});
  if (id == "4b") return make(Temperature, Gamma, {{Omega, 2.0}});
  if (id == "5a") return make(Temperature, Strength, {{Omega, 1.0}, {Gamma, 1.0}});
  if (id == "5b") return make(Temperature, Strength, {{Omega, 3.0}, {Gamma, 3.0}});
  if (id == "6a") return make(Gamma, Strength, {{Omega, 1.0}, {Temperature, 0.01}});
  if (id == "6b") return make(Omega, Strength, {{Gamma, 1.0}, {Temperature, 0.01}});
  invalid("unknown figure id '" + std::string(id) + "'");
}

std::vector<std::string> figure_ids() {
  return {"2a", "2b", "3a", "3b", "4a", "4b", "5a", "5b", "6a", "6b"};
}

void write_sidecar(const SweepGrid& grid, std::string_view figure_id,
                   std::ostream& out) {
  const nlohmann::json doc = {
      {"schema_version", 1},
      {"tool_version", grid.tool_version},
      {"figure", figure_id},
      {"engine", to_string(grid.engine)},
      {"x_axis", axis_json(grid.x)},
      {"y_axis", axis_json(grid.y)},
      {"fixed", fixed_json(grid.fixed)},
      {"timestamp", grid.timestamp},
  };
  out << doc.dump(2) << '\n';
}

std::string utc_timestamp() {
  const std::time_t now =
      std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm parts{};
  gmtime_r(&now, &parts);
  std::array<char, 32> buffer{};
  const std::size_t n =
      std::strftime(buffer.data(), buffer.size(), "%Y-%m-%dT%H:%M:%SZ", &parts);
  return std::string(buffer.data(), n);
}

}  // namespace gravcat
