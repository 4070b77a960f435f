#include "gravcat/dense_coding.hpp"

#include <array>
#include <cmath>

#include "gravcat/error.hpp"

namespace gravcat {

namespace {

void require_two_qubits(const DensityMatrix& rho) {
  if (rho.dim() != 4) {
    throw Error(ErrorCode::DimensionMismatch,
                "dense coding expects a two-qubit (4x4) state");
  }
}

DensityMatrix like_input(const DensityMatrix& input, const ComplexMatrix& m) {
  HermitianMatrix h(m);
  return input.validated() ? DensityMatrix::checked(std::move(h))
                           : DensityMatrix::unchecked(std::move(h));
}

}  // namespace

std::string_view to_string(Advantage advantage) noexcept {
  switch (advantage) {
    case Advantage::None: return "none";
    case Advantage::Valid: return "valid";
    case Advantage::Optimal: return "optimal";
  }
  return "none";
}

Advantage classify_advantage(double chi) noexcept {
  if (chi >= 2.0 - kOptimalEpsilon) return Advantage::Optimal;
  if (chi > 1.0) return Advantage::Valid;
  return Advantage::None;
}

DensityMatrix ensemble_average(const DensityMatrix& rho) {
  require_two_qubits(rho);
  const std::array<const HermitianMatrix*, 4> paulis = {
      &pauli::identity(), &pauli::x(), &pauli::y(), &pauli::z()};
  const ComplexMatrix id2 = ComplexMatrix::identity(2);
  ComplexMatrix sum(4);
  for (const HermitianMatrix* s : paulis) {
    const ComplexMatrix u = kron(s->matrix(), id2);
    sum += u * rho.matrix() * u.adjoint();
  }
  sum *= 0.25;
  return like_input(rho, sum);
}

DensityMatrix ensemble_average_via_marginal(const DensityMatrix& rho) {
  require_two_qubits(rho);
  const DensityMatrix marginal = partial_trace_first(rho);
  return like_input(rho, kron(ComplexMatrix::identity(2) * 0.5,
                              marginal.matrix()));
}

CapacityReport capacity_numeric(const DensityMatrix& rho) {
  require_two_qubits(rho);
  const Spectrum state = eigh(rho.hermitian());
  const EntropyResult s_state = shannon_entropy(state.eigenvalues);
  const EntropyResult s_avg = von_neumann_entropy_detail(ensemble_average(rho));

  CapacityReport report;
  report.entropy_state = s_state.bits;
  report.entropy_average = s_avg.bits;
  report.chi = s_avg.bits - s_state.bits;
  report.state_spectrum = state.eigenvalues;
  report.advantage = classify_advantage(report.chi);
  report.clamp_warning = s_state.clamped || s_avg.clamped;
  return report;
}

CapacityReport capacity_from_weights(std::vector<double> state_weights,
                                     double marginal_low,
                                     double marginal_high) {
  const EntropyResult s_state = shannon_entropy(state_weights);
  const std::array<double, 4> average = {0.5 * marginal_low, 0.5 * marginal_high,
                                         0.5 * marginal_low, 0.5 * marginal_high};
  const EntropyResult s_avg = shannon_entropy(average);

  CapacityReport report;
  report.entropy_state = s_state.bits;
  report.entropy_average = s_avg.bits;
  report.chi = s_avg.bits - s_state.bits;
  report.state_spectrum = std::move(state_weights);
  report.advantage = classify_advantage(report.chi);
  report.clamp_warning = s_state.clamped || s_avg.clamped;
  return report;
}

std::pair<double, double> outer_block_eigenvalues(const ThermalClosedForm& cf) {
  const double sum = cf.alpha_minus + cf.alpha_plus;
  const double diff = cf.alpha_minus - cf.alpha_plus;
  const double k = std::abs(cf.kappa);
  const double root = std::sqrt(diff * diff + 4.0 * k * k);
  return {0.5 * (sum + root), 0.5 * (sum - root)};
}

CapacityReport capacity_closed_form(const GravcatParams& params,
                                    ParamPolicy policy) {
  const ThermalClosedForm cf = thermal_closed_form(params, policy);
  const auto [a_plus, a_minus] = outer_block_eigenvalues(cf);
  const double b_plus = cf.beta + std::abs(cf.eta);
  const double b_minus = cf.beta - std::abs(cf.eta);
  return capacity_from_weights({a_plus, a_minus, b_plus, b_minus},
                               cf.alpha_minus + cf.beta,
                               cf.alpha_plus + cf.beta);
}

}  // namespace gravcat
