#include "gravcat/weak_measurement.hpp"

#include <cmath>
#include <string>

#include "gravcat/error.hpp"

namespace gravcat {

namespace {

constexpr int kGridPoints = 1001;
constexpr double kRefineWidth = 1e-9;

void require_strength(double p, bool allow_one) {
  const bool ok = allow_one ? (p >= 0.0 && p <= 1.0) : (p >= 0.0 && p < 1.0);
  if (!ok) {
    throw Error(ErrorCode::OutOfRange,
                "measurement strength p must lie in " +
                    std::string(allow_one ? "[0, 1]" : "[0, 1)") + ", got " +
                    std::to_string(p));
  }
}

}  // namespace

ComplexMatrix qwm_operator(double p) {
  require_strength(p, true);
  return ComplexMatrix(2, {1.0, 0.0, 0.0, std::sqrt(1.0 - p)});
}

PostSelectedState apply_qwm(const DensityMatrix& rho, double p) {
  if (rho.dim() != 4) {
    throw Error(ErrorCode::DimensionMismatch,
                "weak measurement expects a two-qubit (4x4) state");
  }
  const ComplexMatrix q = qwm_operator(p);
  // Identity Kraus: post-selection always succeeds.
  if (p == 0.0) return {rho, 1.0};
  const ComplexMatrix k = kron(q, q);
  const ComplexMatrix unnormalized = k * rho.matrix() * k.adjoint();
  const double ps = unnormalized.trace().real();
  if (!(ps >= kMinSuccessProbability)) {
    throw Error(ErrorCode::ZeroSuccessProbability,
                "post-selection success probability vanishes");
  }
  return {DensityMatrix::checked(HermitianMatrix(unnormalized *
                                                 Complex(1.0 / ps))),
          ps};
}

double success_probability(const ThermalClosedForm& cf, double p) {
  require_strength(p, true);
  if (p == 0.0) return 1.0;
  const double s = 1.0 - p;
  return cf.alpha_minus + 2.0 * cf.beta * s + cf.alpha_plus * s * s;
}

PostSelectedState post_selected_closed_form(const ThermalClosedForm& cf,
                                            double p) {
  require_strength(p, true);
  // sqrt((1-p)^2) is written simply as (1-p); p <= 1 keeps it non-negative.
  const double s = 1.0 - p;
  const double ps = success_probability(cf, p);
  if (!(ps >= kMinSuccessProbability)) {
    throw Error(ErrorCode::ZeroSuccessProbability,
                "post-selection success probability vanishes");
  }
  const double am = cf.alpha_minus / ps;
  const double ap = cf.alpha_plus * s * s / ps;
  const double b = cf.beta * s / ps;
  const double e = cf.eta * s / ps;
  const double k = cf.kappa * s / ps;
  return {DensityMatrix::checked(ComplexMatrix(4, {
                                                      am, 0., 0., k,  //
                                                      0., b, e, 0.,   //
                                                      0., e, b, 0.,   //
                                                      k, 0., 0., ap,
                                                  })),
          ps};
}

CapacityReport capacity_wm_closed_form(const GravcatParams& params, double p,
                                       ParamPolicy policy) {
  require_strength(p, false);
  const ThermalClosedForm cf = thermal_closed_form(params, policy);
  const double s = 1.0 - p;
  const double ps = success_probability(cf, p);

  const double outer_sum = cf.alpha_minus + cf.alpha_plus * s * s;
  const double outer_diff = cf.alpha_minus - cf.alpha_plus * s * s;
  const double coupling = std::abs(cf.kappa * s);
  const double root =
      std::sqrt(outer_diff * outer_diff + 4.0 * coupling * coupling);
  const double c_plus = 0.5 * (outer_sum + root) / ps;
  const double c_minus = 0.5 * (outer_sum - root) / ps;
  const double d_plus = (cf.beta + std::abs(cf.eta)) * s / ps;
  const double d_minus = (cf.beta - std::abs(cf.eta)) * s / ps;
  const double nu = (cf.alpha_minus + cf.beta * s) / ps;
  const double mu = (cf.alpha_plus * s * s + cf.beta * s) / ps;

  CapacityReport report =
      capacity_from_weights({c_plus, c_minus, d_plus, d_minus}, nu, mu);
  report.weak_measurement = WeakMeasurementInfo{p, ps};
  return report;
}

StrengthOptimum optimize_strength(const GravcatParams& params,
                                  ParamPolicy policy) {
  params.validate(policy);
  const auto chi_at = [&](double p) {
    return capacity_wm_closed_form(params, p, policy).chi;
  };
  const auto grid_point = [](int i) {
    return i == kGridPoints - 1
               ? kMaxSearchStrength
               : kMaxSearchStrength * static_cast<double>(i) / (kGridPoints - 1);
  };

  int best = 0;
  double best_chi = chi_at(0.0);
  for (int i = 1; i < kGridPoints; ++i) {
    const double chi = chi_at(grid_point(i));
    if (chi > best_chi) {
      best_chi = chi;
      best = i;
    }
  }

  double lo = grid_point(best > 0 ? best - 1 : 0);
  double hi = grid_point(best < kGridPoints - 1 ? best + 1 : best);
  const double inv_phi = 0.5 * (std::sqrt(5.0) - 1.0);
  double x1 = hi - inv_phi * (hi - lo);
  double x2 = lo + inv_phi * (hi - lo);
  double f1 = chi_at(x1);
  double f2 = chi_at(x2);
  while (hi - lo > kRefineWidth) {
    if (f1 < f2) {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + inv_phi * (hi - lo);
      f2 = chi_at(x2);
    } else {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - inv_phi * (hi - lo);
      f1 = chi_at(x1);
    }
  }

  StrengthOptimum out{grid_point(best), best_chi};
  const double refined = 0.5 * (lo + hi);
  const double refined_chi = chi_at(refined);
  if (refined_chi > out.chi_star) out = {refined, refined_chi};
  return out;
}

}  // namespace gravcat
