#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "gravcat/dense_coding.hpp"
#include "gravcat/thermal.hpp"

namespace gravcat {

inline constexpr std::string_view kToolName = "gravcat-coding";
inline constexpr std::string_view kToolVersion = "0.1.0";

/// Declaration order is the canonical order used when listing fixed values.
enum class Param { Omega, Gamma, Temperature, Strength };

/// "omega", "gamma", "T", "p"
std::string_view to_string(Param param) noexcept;
/// Accepts the names above plus "temp" for T.
Param parse_param(std::string_view name);

enum class Engine { ClosedForm, Numeric };

std::string_view to_string(Engine engine) noexcept;
Engine parse_engine(std::string_view name);

/// Uniform inclusive grid of `count` points from start to stop.
struct AxisSpec {
  Param name = Param::Omega;
  double start = 0.0;
  double stop = 1.0;
  int count = 2;

  /// Throws InvalidParameter if the range is empty or leaves the
  /// parameter's domain.
  void validate(ParamPolicy policy = {}) const;
  double value(int index) const;
  std::vector<double> values() const;
};

/// Parses "name:start:stop:count", e.g. "omega:0.01:3:200".
AxisSpec parse_axis(std::string_view text);

using FixedValues = std::vector<std::pair<Param, double>>;

struct SweepConfig {
  AxisSpec x;
  AxisSpec y;
  /// Remaining parameters. omega, gamma and T must each be covered exactly
  /// once by the axes and this list; p is optional, and without it the plain
  /// thermal capacity is computed.
  FixedValues fixed;
  Engine engine = Engine::ClosedForm;
  ParamPolicy policy;
  /// Worker threads; 0 picks the number of available processors.
  unsigned jobs = 0;

  void validate() const;
};

struct SweepGrid {
  AxisSpec x;
  AxisSpec y;
  FixedValues fixed;
  Engine engine = Engine::ClosedForm;
  /// Row-major: values[iy * x.count + ix], x varies fastest.
  std::vector<double> values;
  std::string tool_version{kToolVersion};
  /// ISO-8601 UTC creation time; not part of the CSV.
  std::string timestamp;

  double at(int ix, int iy) const {
    return values[static_cast<std::size_t>(iy) * static_cast<std::size_t>(x.count) +
                  static_cast<std::size_t>(ix)];
  }
};

/// One capacity evaluation with the chosen engine. Without p this is the
/// thermal capacity; with p the post-selected weak-measurement capacity.
CapacityReport evaluate_capacity(const GravcatParams& params,
                                 std::optional<double> p, Engine engine,
                                 ParamPolicy policy = {});

/// Evaluates every cell, in parallel up to config.jobs threads. The first
/// failing cell (in row-major order) aborts the sweep with an Error naming
/// the cell.
SweepGrid run_sweep(const SweepConfig& config);

/// Header comment, "y\x" row of x values, then one row per y value. Throws
/// InvalidState if a cell leaves [-1e-10, 2 + 1e-10].
void write_csv(const SweepGrid& grid, std::ostream& out);
void write_json(const SweepGrid& grid, std::ostream& out);

/// Shortest decimal text that parses back to the same double.
std::string format_number(double value);

/// Default axis ranges (200 points each).
AxisSpec default_axis(Param name);

/// Sweep preset for a figure id ("2a" ... "6b"); InvalidParameter for an
/// unknown id.
SweepConfig figure_config(std::string_view id);
std::vector<std::string> figure_ids();

/// Configuration record written next to a figure CSV.
void write_sidecar(const SweepGrid& grid, std::string_view figure_id,
                   std::ostream& out);

/// Current UTC time as YYYY-MM-DDTHH:MM:SSZ.
std::string utc_timestamp();

}  // namespace gravcat
