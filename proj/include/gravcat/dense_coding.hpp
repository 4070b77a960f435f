#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "gravcat/matrix.hpp"
#include "gravcat/thermal.hpp"

namespace gravcat {

/// Distance from 2 within which a capacity counts as optimal.
inline constexpr double kOptimalEpsilon = 1e-3;

enum class Advantage {
  None,     // chi <= 1
  Valid,    // 1 < chi < 2 - eps
  Optimal,  // chi >= 2 - eps
};

std::string_view to_string(Advantage advantage) noexcept;
Advantage classify_advantage(double chi) noexcept;

struct WeakMeasurementInfo {
  double strength = 0.0;
  double success_probability = 1.0;
};

struct CapacityReport {
  /// S(ensemble average) - S(state), bits.
  double chi = 0.0;
  double entropy_state = 0.0;
  double entropy_average = 0.0;
  /// Eigenvalues of the state. Closed-form reports list (a+, a-, b+, b-) or
  /// (c+, c-, d+, d-); numeric reports list them sorted descending.
  std::vector<double> state_spectrum;
  Advantage advantage = Advantage::None;
  /// Some eigenvalue needed clamping beyond the silent noise floor.
  bool clamp_warning = false;
  std::optional<WeakMeasurementInfo> weak_measurement;
};

/// (1/4) sum_i (s_i (x) I) rho (s_i (x) I) over s_i in {I, X, Y, Z}.
DensityMatrix ensemble_average(const DensityMatrix& rho);

/// (I/2) (x) tr_A(rho); the same state as ensemble_average by a different
/// route.
DensityMatrix ensemble_average_via_marginal(const DensityMatrix& rho);

/// Capacity from the definition: both entropies by diagonalization.
CapacityReport capacity_numeric(const DensityMatrix& rho);

/// Builds a report from the state eigenvalues and the marginal weights of
/// qubit B (each appears twice, halved, in the ensemble average).
CapacityReport capacity_from_weights(std::vector<double> state_weights,
                                     double marginal_low,
                                     double marginal_high);

/// Eigenvalues of the thermal state's outer block, from the closed-form
/// entries: a+- = [(alpha- + alpha+) +- sqrt((alpha- - alpha+)^2 + 4 kappa^2)]/2.
std::pair<double, double> outer_block_eigenvalues(const ThermalClosedForm& cf);

/// Analytic capacity of the gravcat thermal state.
CapacityReport capacity_closed_form(const GravcatParams& params,
                                    ParamPolicy policy = {});

}  // namespace gravcat
