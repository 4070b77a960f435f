#include "gravcat/thermal.hpp"

#include <cmath>
#include <string>

#include "gravcat/error.hpp"

namespace gravcat {

namespace {

void require(bool ok, ErrorCode code, const std::string& message) {
  if (!ok) throw Error(code, message);
}

}  // namespace

void GravcatParams::validate(ParamPolicy policy) const {
  require(std::isfinite(omega), ErrorCode::InvalidParameter,
          "omega must be finite");
  require(std::isfinite(gamma), ErrorCode::InvalidParameter,
          "gamma must be finite");
  require(!std::isnan(temperature), ErrorCode::InvalidParameter,
          "temperature must be finite");
  if (policy.allow_zero_omega) {
    require(omega >= 0.0, ErrorCode::InvalidParameter,
            "omega must be non-negative");
  } else {
    require(omega > 0.0, ErrorCode::InvalidParameter,
            "omega must be positive (pass allow_zero_omega to permit 0)");
  }
  require(gamma >= 0.0, ErrorCode::InvalidParameter,
          "gamma must be non-negative");
  require(temperature > 0.0, ErrorCode::InvalidParameter,
          "temperature must be positive");
  require(std::isfinite(temperature), ErrorCode::InvalidParameter,
          "temperature must be finite");
  require(temperature >= kMinTemperature, ErrorCode::InvalidParameter,
          "temperature must be at least 1e-6");
}

HermitianMatrix build_hamiltonian(const GravcatParams& params,
                                  ParamPolicy policy) {
  params.validate(policy);
  const double w = params.omega;
  const double g = params.gamma;
  // (w/2)(I(x)Z + Z(x)I) is diag(w, 0, 0, -w); X(x)X is the anti-diagonal.
  return HermitianMatrix(ComplexMatrix(4, {
                                              w,  0., 0., -g,  //
                                              0., 0., -g, 0.,  //
                                              0., -g, 0., 0.,  //
                                              -g, 0., 0., -w,
                                          }));
}

double coupling_from_geometry(const GravcatGeometry& geom) {
  require(std::isfinite(geom.G) && geom.G > 0.0, ErrorCode::InvalidParameter,
          "G must be positive");
  require(std::isfinite(geom.mass) && geom.mass > 0.0,
          ErrorCode::InvalidParameter, "mass must be positive");
  require(std::isfinite(geom.d_prime) && geom.d_prime > 0.0,
          ErrorCode::InvalidParameter, "d_prime must be positive");
  require(std::isfinite(geom.L) && geom.L >= 0.0, ErrorCode::InvalidParameter,
          "L must be non-negative");
  require(geom.L < geom.d_prime, ErrorCode::DegenerateGeometry,
          "L must be smaller than d_prime");
  const double d = std::sqrt((geom.d_prime - geom.L) * (geom.d_prime + geom.L));
  return 0.5 * geom.G * geom.mass * geom.mass * (1.0 / d - 1.0 / geom.d_prime);
}

ThermalClosedForm thermal_closed_form(const GravcatParams& params,
                                      ParamPolicy policy) {
  params.validate(policy);
  const double w = params.omega;
  const double g = params.gamma;
  const double T = params.temperature;
  const double theta = std::hypot(w, g);

  // Every term below is the printed cosh/sinh expression divided by
  // e^{Theta/T}; Theta >= gamma keeps all the exponents non-positive.
  const double x = theta / T;
  const double y = g / T;
  const double e2x = std::exp(-2.0 * x);
  const double one_minus_e2x = -std::expm1(-2.0 * x);
  const double cosh_y = 0.5 * (std::exp(y - x) + std::exp(-y - x));
  const double sinh_y = 0.5 * (std::exp(y - x) - std::exp(-y - x));
  // Z e^{-Theta/T} / 2, so alpha and kappa carry 1/(4 half_z), beta and eta
  // 1/(2 half_z).
  const double half_z = 0.5 * (1.0 + e2x) + cosh_y;

  const double r = theta > 0.0 ? w / theta : 0.0;
  const double q = theta > 0.0 ? g / theta : 0.0;
  // 1 - omega/Theta = gamma^2 / (Theta (Theta + omega)), without cancellation.
  const double one_minus_r = theta > 0.0 ? g * g / (theta * (theta + w)) : 1.0;

  ThermalClosedForm cf;
  cf.Theta = theta;
  cf.alpha_minus = 0.25 * (one_minus_r + e2x * (1.0 + r)) / half_z;
  cf.alpha_plus = 0.25 * ((1.0 + r) + e2x * one_minus_r) / half_z;
  cf.beta = 0.5 * cosh_y / half_z;
  cf.eta = 0.5 * sinh_y / half_z;
  cf.kappa = 0.25 * q * one_minus_e2x / half_z;
  cf.log_Z = x + std::log(2.0 * half_z);
  cf.Z = std::exp(cf.log_Z);
  return cf;
}

DensityMatrix assemble_thermal_state(const ThermalClosedForm& cf) {
  const double am = cf.alpha_minus;
  const double ap = cf.alpha_plus;
  const double b = cf.beta;
  const double k = cf.kappa;
  const double e = cf.eta;
  return DensityMatrix::checked(ComplexMatrix(4, {
                                                     am, 0., 0., k,  //
                                                     0., b, e, 0.,   //
                                                     0., e, b, 0.,   //
                                                     k, 0., 0., ap,
                                                 }));
}

DensityMatrix gibbs_numeric(const HermitianMatrix& hamiltonian,
                            double temperature) {
  require(temperature > 0.0 && std::isfinite(temperature),
          ErrorCode::InvalidParameter, "temperature must be positive");
  const Spectrum spectrum = eigh(hamiltonian);
  const double e_min = spectrum.eigenvalues.back();
  const HermitianMatrix unnormalized = matrix_function(
      hamiltonian,
      [&](double e) { return std::exp(-(e - e_min) / temperature); });
  const double z = unnormalized.trace();
  return DensityMatrix::checked(HermitianMatrix(unnormalized.matrix() *
                                                Complex(1.0 / z)));
}

DensityMatrix thermal_state(const GravcatParams& params, ParamPolicy policy) {
  return assemble_thermal_state(thermal_closed_form(params, policy));
}

}  // namespace gravcat
