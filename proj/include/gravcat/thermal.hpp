#pragma once

// Two coupled gravitational cat qubits in a thermal bath (k_B = 1):
//
//   H = (omega/2) (I (x) Z + Z (x) I) - gamma (X (x) X)
//
// The Gibbs state has an X-shaped pattern in the |00>,|01>,|10>,|11> basis
// and is available both from closed-form entries and from a numeric matrix
// exponential of H.

#include "gravcat/matrix.hpp"

namespace gravcat {

/// Smallest temperature accepted by parameter validation.
inline constexpr double kMinTemperature = 1e-6;

struct ParamPolicy {
  /// omega == 0 makes the +-Theta and +-gamma levels cross. The closed form
  /// stays finite there, but it has to be requested explicitly.
  bool allow_zero_omega = false;
};

struct GravcatParams {
  double omega = 1.0;
  double gamma = 0.0;
  double temperature = 1.0;

  /// Throws InvalidParameter naming the offending field.
  void validate(ParamPolicy policy = {}) const;
};

struct GravcatGeometry {
  double G = 1.0;
  double mass = 1.0;
  double d_prime = 1.0;
  double L = 0.0;
};

/// Entries of the thermal state; alpha_minus sits on |00><00|, alpha_plus on
/// |11><11|, beta on the |01>,|10> diagonal, kappa on the corners and eta on
/// the inner off-diagonal.
struct ThermalClosedForm {
  double alpha_minus = 0.0;
  double alpha_plus = 0.0;
  double beta = 0.0;
  double kappa = 0.0;
  double eta = 0.0;
  /// 2[cosh(Theta/T) + cosh(gamma/T)]; +inf once it overflows a double.
  double Z = 0.0;
  /// log Z, finite across the whole accepted temperature range.
  double log_Z = 0.0;
  /// sqrt(omega^2 + gamma^2)
  double Theta = 0.0;
};

HermitianMatrix build_hamiltonian(const GravcatParams& params,
                                  ParamPolicy policy = {});

/// gamma = (G m^2 / 2) (1/d - 1/d') with d = sqrt(d'^2 - L^2).
/// Throws DegenerateGeometry if L >= d', InvalidParameter for other bad
/// fields.
double coupling_from_geometry(const GravcatGeometry& geom);

/// Closed-form entries evaluated with e^{Theta/T} factored out of every
/// cosh/sinh, so nothing overflows down to kMinTemperature.
ThermalClosedForm thermal_closed_form(const GravcatParams& params,
                                      ParamPolicy policy = {});

/// Lays the closed-form entries out as a 4x4 density matrix. Throws
/// InvalidState if the result is not a valid state.
DensityMatrix assemble_thermal_state(const ThermalClosedForm& cf);

/// exp(-(H - E_min)/T) / tr(...), via the spectral decomposition of H.
DensityMatrix gibbs_numeric(const HermitianMatrix& hamiltonian,
                            double temperature);

/// assemble_thermal_state(thermal_closed_form(params))
DensityMatrix thermal_state(const GravcatParams& params,
                            ParamPolicy policy = {});

}  // namespace gravcat
