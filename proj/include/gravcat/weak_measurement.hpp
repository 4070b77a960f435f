#pragma once

// Weak measurement of strength p on both qubits, followed by post-selection
// on the non-collapsed outcome. The Kraus element on one qubit is
// diag(1, sqrt(1 - p)).

#include "gravcat/dense_coding.hpp"
#include "gravcat/matrix.hpp"
#include "gravcat/thermal.hpp"

namespace gravcat {

/// Post-selection below this probability is reported as failure.
inline constexpr double kMinSuccessProbability = 1e-300;

struct PostSelectedState {
  DensityMatrix state;
  double success_probability = 1.0;
};

struct StrengthOptimum {
  double p_star = 0.0;
  double chi_star = 0.0;
};

/// diag(1, sqrt(1 - p)); OutOfRange unless 0 <= p <= 1.
ComplexMatrix qwm_operator(double p);

/// (Q (x) Q) rho (Q (x) Q)^dagger / P_s. p = 1 is accepted as long as the
/// state keeps weight on |00>.
PostSelectedState apply_qwm(const DensityMatrix& rho, double p);

/// The post-selected thermal state written directly from the closed-form
/// entries: entry (i, j) picks up (1-p)^{(n_i + n_j)/2} with n the number of
/// excited qubits.
PostSelectedState post_selected_closed_form(const ThermalClosedForm& cf,
                                            double p);

/// alpha- + 2 beta (1 - p) + alpha+ (1 - p)^2
double success_probability(const ThermalClosedForm& cf, double p);

/// Closed-form capacity of the post-selected thermal state. Defined for
/// 0 <= p < 1; state_spectrum holds (c+, c-, d+, d-).
CapacityReport capacity_wm_closed_form(const GravcatParams& params, double p,
                                       ParamPolicy policy = {});

/// Upper end of the strength search interval.
inline constexpr double kMaxSearchStrength = 1.0 - 1e-9;

/// Maximizes capacity_wm_closed_form over p in [0, kMaxSearchStrength]:
/// a 1001-point grid, then golden-section refinement of the bracket around
/// the best grid point down to a 1e-9 wide interval. The p = 0 value is never
/// beaten by a worse refined point.
StrengthOptimum optimize_strength(const GravcatParams& params,
                                  ParamPolicy policy = {});

}  // namespace gravcat
