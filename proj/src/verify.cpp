#include "gravcat/verify.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <ostream>

#include "json.hpp"

#include "gravcat/dense_coding.hpp"
#include "gravcat/error.hpp"
#include "gravcat/sweep.hpp"
#include "gravcat/weak_measurement.hpp"

namespace gravcat {

namespace {

enum CheckIndex {
  kThermalState,
  kThermalSpectrum,
  kCapacity,
  kPostSelectedState,
  kWeakCapacity,
  kTwirl,
  kCheckCount,
};

std::vector<VerificationCheck> make_checks() {
  std::vector<VerificationCheck> checks(kCheckCount);
  checks[kThermalState] = {"thermal_state_closed_form_vs_gibbs_numeric", 0, 1e-10};
  checks[kThermalSpectrum] = {"thermal_spectrum_vs_boltzmann_weights", 0, 1e-10};
  checks[kCapacity] = {"capacity_closed_form_vs_numeric", 0, 1e-9};
  checks[kPostSelectedState] = {"post_selected_closed_form_vs_kraus", 0, 1e-12};
  checks[kWeakCapacity] = {"capacity_wm_closed_form_vs_numeric", 0, 1e-9};
  checks[kTwirl] = {"twirl_vs_marginal_identity", 0, 1e-12};
  return checks;
}

void record(VerificationCheck& check, double deviation, std::uint64_t sample) {
  // NaN counts as the worst possible deviation.
  if (std::isnan(deviation)) deviation = std::numeric_limits<double>::infinity();
  if (deviation > check.max_deviation) {
    check.max_deviation = deviation;
    check.worst_sample = sample;
  }
}

std::vector<double> boltzmann_weights(const GravcatParams& params) {
  const double theta = std::hypot(params.omega, params.gamma);
  const double t = params.temperature;
  // Energies -Theta, -gamma, gamma, Theta relative to the ground level.
  std::vector<double> w = {1.0, std::exp(-(theta - params.gamma) / t),
                           std::exp(-(theta + params.gamma) / t),
                           std::exp(-2.0 * theta / t)};
  double z = 0.0;
  for (const double v : w) z += v;
  for (double& v : w) v /= z;
  std::sort(w.begin(), w.end(), std::greater<>());
  return w;
}

}  // namespace

bool VerificationReport::passed() const noexcept {
  return std::all_of(checks.begin(), checks.end(),
                     [](const VerificationCheck& c) { return c.passed(); });
}

VerificationDraw draw_sample(SplitMix64& rng) {
  VerificationDraw draw;
  draw.params.omega = 5.0 * (1.0 - rng.unit());
  draw.params.gamma = 5.0 * rng.unit();
  draw.params.temperature = 0.05 + 9.95 * rng.unit();
  draw.p = 0.99 * rng.unit();

  ComplexMatrix a(4);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) {
      const double re = 2.0 * rng.unit() - 1.0;
      const double im = 2.0 * rng.unit() - 1.0;
      a(i, j) = Complex(re, im);
    }
  const ComplexMatrix gram = a * a.adjoint();
  draw.generic_state =
      DensityMatrix::checked(HermitianMatrix(gram * Complex(1.0 / gram.trace().real())));
  return draw;
}

VerificationReport run_verification(std::uint64_t samples, std::uint64_t seed) {
  if (samples < 1)
    throw Error(ErrorCode::InvalidParameter, "samples must be at least 1");

  VerificationReport report;
  report.samples = samples;
  report.seed = seed;
  report.checks = make_checks();
  auto& checks = report.checks;

  SplitMix64 rng(seed);
  for (std::uint64_t s = 0; s < samples; ++s) {
    const VerificationDraw draw = draw_sample(rng);
    const GravcatParams& params = draw.params;

    const ThermalClosedForm cf = thermal_closed_form(params);
    const DensityMatrix closed = assemble_thermal_state(cf);
    const DensityMatrix numeric =
        gibbs_numeric(build_hamiltonian(params), params.temperature);
    record(checks[kThermalState], closed.matrix().max_abs_diff(numeric.matrix()), s);

    const std::vector<double> expected = boltzmann_weights(params);
    const Spectrum spectrum = eigh(closed.hermitian());
    double spectrum_dev = 0.0;
    for (std::size_t k = 0; k < expected.size(); ++k)
      spectrum_dev =
          std::max(spectrum_dev, std::abs(spectrum.eigenvalues[k] - expected[k]));
    record(checks[kThermalSpectrum], spectrum_dev, s);

    record(checks[kCapacity],
           std::abs(capacity_closed_form(params).chi - capacity_numeric(numeric).chi),
           s);

    const PostSelectedState kraus = apply_qwm(numeric, draw.p);
    const PostSelectedState pattern = post_selected_closed_form(cf, draw.p);
    record(checks[kPostSelectedState],
           std::max(pattern.state.matrix().max_abs_diff(kraus.state.matrix()),
                    std::abs(pattern.success_probability - kraus.success_probability)),
           s);

    record(checks[kWeakCapacity],
           std::abs(capacity_wm_closed_form(params, draw.p).chi -
                    capacity_numeric(kraus.state).chi),
           s);

    double twirl_dev = 0.0;
    for (const DensityMatrix* rho : {&numeric, &kraus.state, &draw.generic_state}) {
      twirl_dev = std::max(twirl_dev, ensemble_average(*rho).matrix().max_abs_diff(
                                          ensemble_average_via_marginal(*rho).matrix()));
    }
    record(checks[kTwirl], twirl_dev, s);
  }
  return report;
}

void write_json(const VerificationReport& report, std::ostream& out) {
  nlohmann::json checks = nlohmann::json::array();
  for (const auto& c : report.checks) {
    checks.push_back({{"name", c.name},
                      {"max_deviation", c.max_deviation},
                      {"threshold", c.threshold},
                      {"worst_sample", c.worst_sample},
                      {"pass", c.passed()}});
  }
  const nlohmann::json doc = {
      {"schema_version", 1},
      {"tool_version", kToolVersion},
      {"rng", "splitmix64"},
      {"samples", report.samples},
      {"seed", report.seed},
      {"checks", std::move(checks)},
      {"pass", report.passed()},
  };
  out << doc.dump(2) << '\n';
}

}  // namespace gravcat
