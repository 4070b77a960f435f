#include "gravcat/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "gravcat/error.hpp"

namespace gravcat {

namespace {

constexpr int kMaxSweeps = 100;
constexpr double kOffDiagonalTarget = 1e-14;

void require_same_dim(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.dim() != b.dim()) {
    throw Error(ErrorCode::DimensionMismatch,
                "matrix dimensions differ: " + std::to_string(a.dim()) +
                    " vs " + std::to_string(b.dim()));
  }
}

double off_diagonal_norm(const ComplexMatrix& a) {
  double sum = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < a.dim(); ++j)
      if (i != j) sum += std::norm(a(i, j));
  return std::sqrt(sum);
}

double frobenius_norm(const ComplexMatrix& a) {
  double sum = 0.0;
  for (const auto& z : a.entries()) sum += std::norm(z);
  return std::sqrt(sum);
}

// Zeroes a(p,q) with U = diag(1, e^{-i phi}) * [[c, s], [-s, c]] acting on
// the (p, q) plane, where a(p,q) = |a(p,q)| e^{i phi}. a <- U^dagger a U and
// v <- v U.
void rotate(ComplexMatrix& a, ComplexMatrix& v, std::size_t p, std::size_t q) {
  const Complex apq = a(p, q);
  const double magnitude = std::abs(apq);
  if (magnitude == 0.0) return;
  const Complex phase = apq / magnitude;  // e^{i phi}
  const double app = a(p, p).real();
  const double aqq = a(q, q).real();

  const double theta = (aqq - app) / (2.0 * magnitude);
  const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                   (std::abs(theta) + std::sqrt(theta * theta + 1.0));
  const double c = 1.0 / std::sqrt(t * t + 1.0);
  const double s = t * c;

  const Complex u_qp = -s * std::conj(phase);
  const Complex u_qq = c * std::conj(phase);
  const std::size_t n = a.dim();

  for (std::size_t k = 0; k < n; ++k) {
    const Complex akp = a(k, p);
    const Complex akq = a(k, q);
    a(k, p) = akp * c + akq * u_qp;
    a(k, q) = akp * s + akq * u_qq;
  }
  for (std::size_t k = 0; k < n; ++k) {
    const Complex apk = a(p, k);
    const Complex aqk = a(q, k);
    a(p, k) = c * apk + std::conj(u_qp) * aqk;
    a(q, k) = s * apk + std::conj(u_qq) * aqk;
  }
  a(p, q) = 0.0;
  a(q, p) = 0.0;
  a(p, p) = a(p, p).real();
  a(q, q) = a(q, q).real();

  for (std::size_t k = 0; k < n; ++k) {
    const Complex vkp = v(k, p);
    const Complex vkq = v(k, q);
    v(k, p) = vkp * c + vkq * u_qp;
    v(k, q) = vkp * s + vkq * u_qq;
  }
}

}  // namespace

ComplexMatrix::ComplexMatrix(std::size_t dim) : dim_(dim), data_(dim * dim) {}

ComplexMatrix::ComplexMatrix(std::size_t dim,
                             std::initializer_list<Complex> row_major)
    : dim_(dim), data_(row_major) {
  if (data_.size() != dim * dim) {
    throw Error(ErrorCode::DimensionMismatch,
                "expected " + std::to_string(dim * dim) + " entries, got " +
                    std::to_string(data_.size()));
  }
}

ComplexMatrix ComplexMatrix::identity(std::size_t dim) {
  ComplexMatrix m(dim);
  for (std::size_t i = 0; i < dim; ++i) m(i, i) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const double> values) {
  ComplexMatrix m(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) m(i, i) = values[i];
  return m;
}

ComplexMatrix ComplexMatrix::adjoint() const {
  ComplexMatrix out(dim_);
  for (std::size_t i = 0; i < dim_; ++i)
    for (std::size_t j = 0; j < dim_; ++j) out(j, i) = std::conj((*this)(i, j));
  return out;
}

Complex ComplexMatrix::trace() const {
  Complex sum = 0.0;
  for (std::size_t i = 0; i < dim_; ++i) sum += (*this)(i, i);
  return sum;
}

double ComplexMatrix::max_abs_diff(const ComplexMatrix& other) const {
  require_same_dim(*this, other);
  double worst = 0.0;
  for (std::size_t k = 0; k < data_.size(); ++k)
    worst = std::max(worst, std::abs(data_[k] - other.data_[k]));
  return worst;
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& rhs) {
  require_same_dim(*this, rhs);
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += rhs.data_[k];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& rhs) {
  require_same_dim(*this, rhs);
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= rhs.data_[k];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(Complex scale) {
  for (auto& z : data_) z *= scale;
  return *this;
}

ComplexMatrix operator*(const ComplexMatrix& lhs, const ComplexMatrix& rhs) {
  require_same_dim(lhs, rhs);
  const std::size_t n = lhs.dim();
  ComplexMatrix out(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) {
      const Complex lik = lhs(i, k);
      if (lik == Complex{}) continue;
      for (std::size_t j = 0; j < n; ++j) out(i, j) += lik * rhs(k, j);
    }
  return out;
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  const std::size_t na = a.dim();
  const std::size_t nb = b.dim();
  ComplexMatrix out(na * nb);
  for (std::size_t i = 0; i < na; ++i)
    for (std::size_t j = 0; j < na; ++j)
      for (std::size_t k = 0; k < nb; ++k)
        for (std::size_t l = 0; l < nb; ++l)
          out(i * nb + k, j * nb + l) = a(i, j) * b(k, l);
  return out;
}

double hermiticity_defect(const ComplexMatrix& m) {
  double worst = 0.0;
  for (std::size_t i = 0; i < m.dim(); ++i)
    for (std::size_t j = i; j < m.dim(); ++j)
      worst = std::max(worst, std::abs(m(i, j) - std::conj(m(j, i))));
  return worst;
}

HermitianMatrix::HermitianMatrix(const ComplexMatrix& m, double tolerance) {
  for (const auto& z : m.entries()) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
      throw Error(ErrorCode::NonFiniteResult, "matrix has non-finite entries");
  }
  const double defect = hermiticity_defect(m);
  if (defect > tolerance) {
    throw Error(ErrorCode::NotHermitian,
                "matrix is not Hermitian (asymmetry " + std::to_string(defect) +
                    ")");
  }
  m_ = ComplexMatrix(m.dim());
  for (std::size_t i = 0; i < m.dim(); ++i) {
    m_(i, i) = m(i, i).real();
    for (std::size_t j = i + 1; j < m.dim(); ++j) {
      const Complex avg = 0.5 * (m(i, j) + std::conj(m(j, i)));
      m_(i, j) = avg;
      m_(j, i) = std::conj(avg);
    }
  }
}

HermitianMatrix HermitianMatrix::identity(std::size_t dim) {
  return HermitianMatrix(ComplexMatrix::identity(dim));
}

HermitianMatrix HermitianMatrix::diagonal(std::span<const double> values) {
  return HermitianMatrix(ComplexMatrix::diagonal(values));
}

ComplexMatrix Spectrum::reconstruct() const {
  const ComplexMatrix scaled_v = [&] {
    ComplexMatrix sv = eigenvectors;
    for (std::size_t i = 0; i < sv.dim(); ++i)
      for (std::size_t k = 0; k < sv.dim(); ++k) sv(i, k) *= eigenvalues[k];
    return sv;
  }();
  return scaled_v * eigenvectors.adjoint();
}

Spectrum eigh(const HermitianMatrix& m) {
  const std::size_t n = m.dim();
  ComplexMatrix a = m.matrix();
  ComplexMatrix v = ComplexMatrix::identity(n);
  const double target = kOffDiagonalTarget * std::max(1.0, frobenius_norm(a));

  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    if (off_diagonal_norm(a) < target) break;
    for (std::size_t p = 0; p + 1 < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) rotate(a, v, p, q);
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  // Stable so that degenerate eigenvalues keep the sweep order.
  std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
    return a(i, i).real() > a(j, j).real();
  });

  Spectrum out;
  out.eigenvalues.resize(n);
  out.eigenvectors = ComplexMatrix(n);
  for (std::size_t k = 0; k < n; ++k) {
    out.eigenvalues[k] = a(order[k], order[k]).real();
    for (std::size_t i = 0; i < n; ++i) out.eigenvectors(i, k) = v(i, order[k]);
  }
  return out;
}

Spectrum eigh(const ComplexMatrix& m) { return eigh(HermitianMatrix(m)); }

HermitianMatrix matrix_function(const HermitianMatrix& m,
                                const std::function<double(double)>& f) {
  Spectrum spectrum = eigh(m);
  for (double& lambda : spectrum.eigenvalues) {
    const double value = f(lambda);
    if (!std::isfinite(value)) {
      throw Error(ErrorCode::NonFiniteResult,
                  "matrix function is not finite at eigenvalue " +
                      std::to_string(lambda));
    }
    lambda = value;
  }
  return HermitianMatrix(spectrum.reconstruct());
}

HermitianMatrix tensor(const HermitianMatrix& a, const HermitianMatrix& b) {
  return HermitianMatrix(kron(a.matrix(), b.matrix()));
}

DensityMatrix DensityMatrix::checked(HermitianMatrix m) {
  const double trace_error = std::abs(m.trace() - 1.0);
  if (!(trace_error <= kTraceTolerance)) {
    throw Error(ErrorCode::InvalidState,
                "density matrix trace deviates from 1 by " +
                    std::to_string(trace_error));
  }
  const Spectrum spectrum = eigh(m);
  const double smallest = spectrum.eigenvalues.back();
  if (smallest < -kNegativeLimit) {
    throw Error(ErrorCode::InvalidState,
                "density matrix has negative eigenvalue " +
                    std::to_string(smallest));
  }
  return DensityMatrix(std::move(m), true);
}

DensityMatrix DensityMatrix::checked(const ComplexMatrix& m) {
  return checked(HermitianMatrix(m));
}

DensityMatrix DensityMatrix::unchecked(HermitianMatrix m) {
  return DensityMatrix(std::move(m), false);
}

EntropyResult shannon_entropy(std::span<const double> weights) {
  EntropyResult result;
  double sum = 0.0;
  for (const double w : weights) {
    if (w < -kNegativeLimit) {
      throw Error(ErrorCode::InvalidState,
                  "negative eigenvalue " + std::to_string(w) +
                      " below tolerance");
    }
    if (w < -kNoiseFloor) result.clamped = true;
    if (w > 0.0) sum -= w * std::log2(w);
  }
  result.bits = sum + 0.0;  // normalizes -0.0
  return result;
}

EntropyResult von_neumann_entropy_detail(const DensityMatrix& rho) {
  const Spectrum spectrum = eigh(rho.hermitian());
  return shannon_entropy(spectrum.eigenvalues);
}

double von_neumann_entropy(const DensityMatrix& rho) {
  return von_neumann_entropy_detail(rho).bits;
}

DensityMatrix partial_trace_first(const DensityMatrix& rho) {
  if (rho.dim() != 4) {
    throw Error(ErrorCode::DimensionMismatch,
                "partial_trace_first expects a two-qubit state");
  }
  ComplexMatrix reduced(2);
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j)
      reduced(i, j) = rho(i, j) + rho(2 + i, 2 + j);
  HermitianMatrix h(reduced);
  return rho.validated() ? DensityMatrix::checked(std::move(h))
                         : DensityMatrix::unchecked(std::move(h));
}

namespace pauli {

const HermitianMatrix& identity() {
  static const HermitianMatrix m(ComplexMatrix(2, {1.0, 0.0, 0.0, 1.0}));
  return m;
}

const HermitianMatrix& x() {
  static const HermitianMatrix m(ComplexMatrix(2, {0.0, 1.0, 1.0, 0.0}));
  return m;
}

const HermitianMatrix& y() {
  static const HermitianMatrix m(
      ComplexMatrix(2, {0.0, Complex(0.0, -1.0), Complex(0.0, 1.0), 0.0}));
  return m;
}

const HermitianMatrix& z() {
  static const HermitianMatrix m(ComplexMatrix(2, {1.0, 0.0, 0.0, -1.0}));
  return m;
}

}  // namespace pauli

}  // namespace gravcat
