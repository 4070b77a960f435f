#include <cmath>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "gravcat/error.hpp"
#include "gravcat/sweep.hpp"
#include "json.hpp"

using namespace gravcat;

namespace {

std::string csv_of(const SweepGrid& grid) {
  std::ostringstream os;
  write_csv(grid, os);
  return os.str();
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream is(text);
  while (std::getline(is, cell, sep)) out.push_back(cell);
  return out;
}

SweepConfig small_config() {
  SweepConfig config;
  config.x = {Param::Gamma, 0.0, 1.0, 2};
  config.y = {Param::Omega, 1.0, 2.0, 2};
  config.fixed = {{Param::Temperature, 1.0}};
  config.jobs = 1;
  return config;
}

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an Error");
  return ErrorCode::InvalidState;
}

}  // namespace

TEST_CASE("axis parsing") {
  const AxisSpec a = parse_axis("omega:0.01:3:200");
  CHECK(a.name == Param::Omega);
  CHECK(a.start == 0.01);
  CHECK(a.stop == 3.0);
  CHECK(a.count == 200);
  CHECK(parse_axis("temp:0.5:1:3").name == Param::Temperature);
  CHECK(parse_axis("T:0.5:1:3").values() == std::vector<double>{0.5, 0.75, 1.0});

  for (const char* bad : {"omega:0:1", "omega:0:1:2:3", "x:0:1:2", "omega:a:1:2",
                          "omega:0:1:2.5", "omega:0:1:", ""}) {
    CAPTURE(bad);
    CHECK(code_of([&] { (void)parse_axis(bad); }) == ErrorCode::InvalidParameter);
  }
}

TEST_CASE("axis validation") {
  CHECK_NOTHROW(AxisSpec({Param::Gamma, 0.0, 3.0, 200}).validate());
  CHECK_THROWS_AS(AxisSpec({Param::Gamma, 0.0, 3.0, 1}).validate(), Error);
  CHECK_THROWS_AS(AxisSpec({Param::Gamma, 1.0, 1.0, 5}).validate(), Error);
  CHECK_THROWS_AS(AxisSpec({Param::Gamma, -0.5, 1.0, 5}).validate(), Error);
  CHECK_THROWS_AS(AxisSpec({Param::Omega, 0.0, 1.0, 5}).validate(), Error);
  CHECK_NOTHROW(AxisSpec({Param::Omega, 0.0, 1.0, 5}).validate({true}));
  CHECK_THROWS_AS(AxisSpec({Param::Temperature, 0.0, 1.0, 5}).validate(), Error);
  CHECK_THROWS_AS(AxisSpec({Param::Strength, 0.0, 1.5, 5}).validate(), Error);
  CHECK_THROWS_AS(AxisSpec({Param::Omega, 0.1, INFINITY, 5}).validate(), Error);

  const AxisSpec odd{Param::Omega, 0.1, 0.7, 7};
  CHECK(odd.value(6) == 0.7);
  CHECK(odd.value(0) == 0.1);
}

TEST_CASE("sweep configuration coverage") {
  SweepConfig config = small_config();
  CHECK_NOTHROW(config.validate());

  config.fixed.clear();
  CHECK_THROWS_AS(config.validate(), Error);

  config = small_config();
  config.fixed.push_back({Param::Gamma, 1.0});
  CHECK_THROWS_AS(config.validate(), Error);

  config = small_config();
  config.y.name = Param::Gamma;
  CHECK_THROWS_AS(config.validate(), Error);

  config = small_config();
  config.fixed.push_back({Param::Strength, 0.2});
  CHECK_NOTHROW(config.validate());
}

TEST_CASE("CSV layout on a 2x2 grid") {
  const SweepGrid grid = run_sweep(small_config());
  const std::string csv = csv_of(grid);
  const std::vector<std::string> lines = split(csv, '\n');
  REQUIRE(lines.size() == 4);
  CHECK(csv.back() == '\n');
  CHECK(lines[0] == "# gravcat-coding v0.1.0 engine=closed_form fixed=T=1");
  CHECK(lines[1] == "y\\x,0,1");

  // scipy expm + explicit twirl, rows omega = 1, 2 and columns gamma = 0, 1.
  const double expected[2][2] = {{0.16005846201683083, 0.5209175173677627},
                                 {0.4729346589968384, 0.6569128045354369}};
  for (int iy = 0; iy < 2; ++iy) {
    const std::vector<std::string> cells = split(lines[static_cast<std::size_t>(iy) + 2], ',');
    REQUIRE(cells.size() == 3);
    CHECK(cells[0] == (iy == 0 ? "1" : "2"));
    for (int ix = 0; ix < 2; ++ix) {
      const double parsed = std::stod(cells[static_cast<std::size_t>(ix) + 1]);
      CHECK(parsed == grid.at(ix, iy));
      CHECK(std::abs(parsed - expected[iy][ix]) < 1e-12);
    }
  }
}

TEST_CASE("fixed values are listed in canonical order") {
  SweepConfig config;
  config.x = {Param::Temperature, 0.5, 1.0, 2};
  config.y = {Param::Strength, 0.0, 0.5, 2};
  config.fixed = {{Param::Gamma, 1.5}, {Param::Omega, 0.25}};
  config.jobs = 1;
  const std::string csv = csv_of(run_sweep(config));
  CHECK(csv.rfind("# gravcat-coding v0.1.0 engine=closed_form fixed=omega=0.25,gamma=1.5\n"
                  "y\\x,0.5,1\n0,",
                  0) == 0);
}

TEST_CASE("CSV writer rejects out-of-range capacities") {
  SweepGrid grid = run_sweep(small_config());
  grid.values[1] = 2.0 + 1e-9;
  CHECK(code_of([&] { (void)csv_of(grid); }) == ErrorCode::InvalidState);
  grid.values[1] = -1e-9;
  CHECK(code_of([&] { (void)csv_of(grid); }) == ErrorCode::InvalidState);
  grid.values[1] = NAN;
  CHECK(code_of([&] { (void)csv_of(grid); }) == ErrorCode::InvalidState);
  grid.values[1] = 2.0 + 1e-11;
  CHECK_NOTHROW(csv_of(grid));
}

TEST_CASE("number formatting round-trips") {
  CHECK(format_number(0.0) == "0");
  CHECK(format_number(1.0) == "1");
  CHECK(format_number(0.1) == "0.1");
  CHECK(format_number(2.5e-7) == "2.5e-07");
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(-10.0, 10.0);
  for (int trial = 0; trial < 10000; ++trial) {
    const double v = std::pow(10.0, u(rng)) * (trial % 2 ? 1.0 : -1.0);
    CHECK(std::stod(format_number(v)) == v);
  }
}

TEST_CASE("closed-form and numeric engines agree on a sweep") {
  SweepConfig config;
  config.x = {Param::Gamma, 0.0, 3.0, 20};
  config.y = {Param::Omega, 0.01, 3.0, 20};
  config.fixed = {{Param::Temperature, 0.3}};
  const SweepGrid closed = run_sweep(config);
  config.engine = Engine::Numeric;
  const SweepGrid numeric = run_sweep(config);
  CHECK(numeric.engine == Engine::Numeric);
  double worst = 0.0;
  for (std::size_t k = 0; k < closed.values.size(); ++k)
    worst = std::max(worst, std::abs(closed.values[k] - numeric.values[k]));
  CHECK(worst < 1e-9);

  config.fixed.push_back({Param::Strength, 0.6});
  const SweepGrid wm_numeric = run_sweep(config);
  config.engine = Engine::ClosedForm;
  const SweepGrid wm_closed = run_sweep(config);
  worst = 0.0;
  for (std::size_t k = 0; k < wm_closed.values.size(); ++k)
    worst = std::max(worst, std::abs(wm_closed.values[k] - wm_numeric.values[k]));
  CHECK(worst < 1e-9);
}

TEST_CASE("thread count does not change the output") {
  SweepConfig config = figure_config("3a");
  config.x.count = 40;
  config.y.count = 30;
  config.jobs = 1;
  const std::string serial = csv_of(run_sweep(config));
  for (const unsigned jobs : {2u, 8u, 0u}) {
    config.jobs = jobs;
    CHECK(csv_of(run_sweep(config)) == serial);
  }
}

TEST_CASE("a failing cell aborts the sweep and names the cell") {
  SweepConfig config;
  config.x = {Param::Temperature, 0.5, 1.0, 3};
  config.y = {Param::Strength, 0.0, 1.0, 3};  // p = 1 is outside the closed form
  config.fixed = {{Param::Omega, 1.0}, {Param::Gamma, 1.0}};
  config.jobs = 4;
  try {
    (void)run_sweep(config);
    FAIL("expected the sweep to fail");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::InvalidParameter);
    CHECK(std::string(e.what()).rfind("cell (x=0, y=2)", 0) == 0);
  }
}

TEST_CASE("figure presets") {
  const std::vector<std::string> ids = figure_ids();
  CHECK(ids.size() == 10);
  for (const std::string& id : ids) {
    CAPTURE(id);
    const SweepConfig config = figure_config(id);
    CHECK_NOTHROW(config.validate());
    CHECK(config.x.count == 200);
    CHECK(config.y.count == 200);
  }
  CHECK(figure_config("2a").x.name == Param::Gamma);
  CHECK(figure_config("2a").y.name == Param::Omega);
  CHECK(figure_config("5b").y.name == Param::Strength);
  CHECK(figure_config("6b").x.name == Param::Omega);
  CHECK(code_of([] { (void)figure_config("7a"); }) == ErrorCode::InvalidParameter);
}

TEST_CASE("figure output equals the equivalent manual sweep") {
  SweepConfig preset = figure_config("4b");
  preset.x.count = 25;
  preset.y.count = 15;
  const SweepGrid from_preset = run_sweep(preset);

  SweepConfig manual;
  manual.x = parse_axis("T:0.01:2:25");
  manual.y = parse_axis("gamma:0:3:15");
  manual.fixed = {{Param::Omega, 2.0}};
  const SweepGrid from_manual = run_sweep(manual);
  CHECK(from_preset.values == from_manual.values);
  CHECK(csv_of(from_preset) == csv_of(from_manual));
}

TEST_CASE("capacity cools towards the dense-coding regime") {
  // At fixed omega and gamma the capacity decreases with temperature.
  for (const char* id : {"3a", "3b"}) {
    SweepConfig config = figure_config(id);
    config.x.count = 60;
    config.y.count = 30;
    const SweepGrid grid = run_sweep(config);
    for (int iy = 0; iy < grid.y.count; ++iy)
      for (int ix = 1; ix < grid.x.count; ++ix)
        CHECK(grid.at(ix, iy) <= grid.at(ix - 1, iy) + 1e-12);
  }
}

TEST_CASE("low-temperature map shows an advantage only with coupling") {
  SweepConfig config = figure_config("2a");
  config.x.count = 31;
  config.y.count = 30;
  const SweepGrid grid = run_sweep(config);
  for (int iy = 0; iy < grid.y.count; ++iy) CHECK(grid.at(0, iy) <= 1.0 + 1e-12);
  double best = 0.0;
  for (const double v : grid.values) best = std::max(best, v);
  CHECK(best > 1.9);
}

TEST_CASE("JSON sweep output mirrors the grid") {
  const SweepGrid grid = run_sweep(small_config());
  std::ostringstream os;
  write_json(grid, os);
  const auto doc = nlohmann::json::parse(os.str());
  CHECK(doc["schema_version"] == 1);
  CHECK(doc["x_name"] == "gamma");
  CHECK(doc["y_name"] == "omega");
  CHECK(doc["fixed"]["T"] == 1.0);
  CHECK(doc["values"][1][0].get<double>() == grid.at(0, 1));
  CHECK(doc["timestamp"].get<std::string>().size() == 20);

  std::ostringstream side;
  write_sidecar(grid, "2a", side);
  const auto meta = nlohmann::json::parse(side.str());
  CHECK(meta["figure"] == "2a");
  CHECK(meta["x_axis"]["count"] == 2);
}
