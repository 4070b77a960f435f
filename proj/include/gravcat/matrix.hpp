#pragma once

// Small dense complex linear algebra: just enough to build two-qubit states,
// diagonalize them and take entropies. Dimensions in practice are 2 and 4.

#include <complex>
#include <cstddef>
#include <functional>
#include <initializer_list>
#include <span>
#include <vector>

namespace gravcat {

using Complex = std::complex<double>;

/// Asymmetry above this is rejected when constructing a HermitianMatrix.
inline constexpr double kHermitianTolerance = 1e-8;
/// Unit-trace tolerance for validated density matrices.
inline constexpr double kTraceTolerance = 1e-10;
/// Eigenvalues in [-kNoiseFloor, 0) are treated as numerical zero.
inline constexpr double kNoiseFloor = 1e-10;
/// Eigenvalues below -kNegativeLimit make a state invalid.
inline constexpr double kNegativeLimit = 1e-8;

class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  explicit ComplexMatrix(std::size_t dim);
  /// Row-major entries; the list length must be dim*dim.
  ComplexMatrix(std::size_t dim, std::initializer_list<Complex> row_major);

  static ComplexMatrix identity(std::size_t dim);
  static ComplexMatrix diagonal(std::span<const double> values);

  std::size_t dim() const noexcept { return dim_; }

  Complex& operator()(std::size_t row, std::size_t col) {
    return data_[row * dim_ + col];
  }
  const Complex& operator()(std::size_t row, std::size_t col) const {
    return data_[row * dim_ + col];
  }

  std::span<const Complex> entries() const noexcept { return data_; }

  ComplexMatrix adjoint() const;
  Complex trace() const;

  /// Largest element-wise modulus of the difference.
  double max_abs_diff(const ComplexMatrix& other) const;

  ComplexMatrix& operator+=(const ComplexMatrix& rhs);
  ComplexMatrix& operator-=(const ComplexMatrix& rhs);
  ComplexMatrix& operator*=(Complex scale);

  friend ComplexMatrix operator+(ComplexMatrix lhs, const ComplexMatrix& rhs) {
    return lhs += rhs;
  }
  friend ComplexMatrix operator-(ComplexMatrix lhs, const ComplexMatrix& rhs) {
    return lhs -= rhs;
  }
  friend ComplexMatrix operator*(ComplexMatrix lhs, Complex scale) {
    return lhs *= scale;
  }
  friend ComplexMatrix operator*(Complex scale, ComplexMatrix rhs) {
    return rhs *= scale;
  }
  friend ComplexMatrix operator*(const ComplexMatrix& lhs,
                                 const ComplexMatrix& rhs);

  friend bool operator==(const ComplexMatrix&, const ComplexMatrix&) = default;

 private:
  std::size_t dim_ = 0;
  std::vector<Complex> data_;
};

/// Kronecker product; the first factor is the slow index.
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

/// max |m(i,j) - conj(m(j,i))|
double hermiticity_defect(const ComplexMatrix& m);

/// A square matrix equal to its adjoint. Construction checks the input
/// against kHermitianTolerance and stores the exactly symmetrized average
/// (m + m^dagger)/2, so the stored entries are Hermitian to the last bit.
class HermitianMatrix {
 public:
  HermitianMatrix() = default;
  explicit HermitianMatrix(const ComplexMatrix& m,
                           double tolerance = kHermitianTolerance);

  static HermitianMatrix identity(std::size_t dim);
  static HermitianMatrix diagonal(std::span<const double> values);

  std::size_t dim() const noexcept { return m_.dim(); }
  const ComplexMatrix& matrix() const noexcept { return m_; }
  const Complex& operator()(std::size_t row, std::size_t col) const {
    return m_(row, col);
  }
  double trace() const { return m_.trace().real(); }

  friend bool operator==(const HermitianMatrix&,
                         const HermitianMatrix&) = default;

 private:
  ComplexMatrix m_;
};

/// Eigenpairs of a Hermitian matrix. Eigenvalues are sorted descending;
/// column k of `eigenvectors` belongs to eigenvalues[k].
struct Spectrum {
  std::vector<double> eigenvalues;
  ComplexMatrix eigenvectors;

  /// V diag(lambda) V^dagger
  ComplexMatrix reconstruct() const;
};

/// Cyclic complex Jacobi. Sweeps until the off-diagonal Frobenius norm drops
/// below 1e-14 (relative to max(1, ||m||_F)) or 100 sweeps have run.
Spectrum eigh(const HermitianMatrix& m);
Spectrum eigh(const ComplexMatrix& m);

/// V diag(f(lambda)) V^dagger. Throws NonFiniteResult if f is not finite on
/// some eigenvalue.
HermitianMatrix matrix_function(const HermitianMatrix& m,
                                const std::function<double(double)>& f);

HermitianMatrix tensor(const HermitianMatrix& a, const HermitianMatrix& b);

/// Hermitian, positive semidefinite, unit trace.
class DensityMatrix {
 public:
  DensityMatrix() = default;

  /// Throws InvalidState unless |tr - 1| <= kTraceTolerance and every
  /// eigenvalue is >= -kNegativeLimit.
  static DensityMatrix checked(HermitianMatrix m);
  static DensityMatrix checked(const ComplexMatrix& m);
  /// Skips validation; `validated()` reports false.
  static DensityMatrix unchecked(HermitianMatrix m);

  const HermitianMatrix& hermitian() const noexcept { return m_; }
  const ComplexMatrix& matrix() const noexcept { return m_.matrix(); }
  std::size_t dim() const noexcept { return m_.dim(); }
  bool validated() const noexcept { return validated_; }
  const Complex& operator()(std::size_t row, std::size_t col) const {
    return m_(row, col);
  }

 private:
  DensityMatrix(HermitianMatrix m, bool validated)
      : m_(std::move(m)), validated_(validated) {}

  HermitianMatrix m_;
  bool validated_ = false;
};

struct EntropyResult {
  double bits = 0.0;
  /// Set when some weight fell in [-kNegativeLimit, -kNoiseFloor) and was
  /// clamped to zero.
  bool clamped = false;
};

/// -sum p log2 p with 0 log 0 = 0. Weights in [-kNoiseFloor, 0) are zeroed
/// silently, down to -kNegativeLimit with the clamp flag, and anything lower
/// throws InvalidState.
EntropyResult shannon_entropy(std::span<const double> weights);

EntropyResult von_neumann_entropy_detail(const DensityMatrix& rho);
/// S(rho) = -tr(rho log2 rho), in bits.
double von_neumann_entropy(const DensityMatrix& rho);

/// tr_A of a state on A (x) B with both factors qubits.
DensityMatrix partial_trace_first(const DensityMatrix& rho);

namespace pauli {
const HermitianMatrix& identity();
const HermitianMatrix& x();
const HermitianMatrix& y();
const HermitianMatrix& z();
}  // namespace pauli

}  // namespace gravcat
