#include <array>
#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "gravcat/error.hpp"
#include "gravcat/matrix.hpp"
#include "gravcat/thermal.hpp"
#include "oracles.hpp"

using namespace gravcat;

namespace {

double gram_defect(const ComplexMatrix& v) {
  return (v.adjoint() * v).max_abs_diff(ComplexMatrix::identity(v.dim()));
}

DensityMatrix diag_state(std::array<double, 4> w) {
  return DensityMatrix::unchecked(HermitianMatrix::diagonal(w));
}

}  // namespace

TEST_CASE("eigh on trivial spectra") {
  SUBCASE("identity") {
    const Spectrum s = eigh(HermitianMatrix::identity(4));
    for (double l : s.eigenvalues) CHECK(l == doctest::Approx(1.0).epsilon(1e-15));
  }
  SUBCASE("diagonal input comes back sorted descending") {
    const std::array<double, 4> d = {-1.0, 3.0, -3.0, 1.0};
    const Spectrum s = eigh(HermitianMatrix::diagonal(d));
    const std::array<double, 4> expected = {3.0, 1.0, -1.0, -3.0};
    for (std::size_t k = 0; k < 4; ++k) CHECK(s.eigenvalues[k] == expected[k]);
    CHECK(s.reconstruct().max_abs_diff(ComplexMatrix::diagonal(d)) < 1e-15);
  }
  SUBCASE("gravcat Hamiltonian at omega = gamma = 1") {
    const Spectrum s = eigh(build_hamiltonian({1.0, 1.0, 1.0}));
    const double r2 = std::numbers::sqrt2;
    const std::array<double, 4> expected = {r2, 1.0, -1.0, -r2};
    for (std::size_t k = 0; k < 4; ++k)
      CHECK(std::abs(s.eigenvalues[k] - expected[k]) < 1e-13);
  }
}

TEST_CASE("eigh on a complex 2x2 matches the quadratic formula") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 100; ++trial) {
    const ComplexMatrix m = oracle::random_hermitian(rng, 2);
    const double a = m(0, 0).real();
    const double d = m(1, 1).real();
    const double r = std::sqrt(0.25 * (a - d) * (a - d) + std::norm(m(0, 1)));
    const Spectrum s = eigh(m);
    CHECK(std::abs(s.eigenvalues[0] - (0.5 * (a + d) + r)) < 1e-14);
    CHECK(std::abs(s.eigenvalues[1] - (0.5 * (a + d) - r)) < 1e-14);
  }
}

TEST_CASE("eigh reconstruction and orthonormality on random Hermitian input") {
  std::mt19937_64 rng(2024);
  for (std::size_t n : {1u, 2u, 3u, 4u, 8u}) {
    for (int trial = 0; trial < 200; ++trial) {
      const ComplexMatrix m = oracle::random_hermitian(rng, n);
      const Spectrum s = eigh(m);
      REQUIRE(s.eigenvalues.size() == n);
      CHECK(s.reconstruct().max_abs_diff(m) < 1e-10);
      CHECK(gram_defect(s.eigenvectors) < 1e-10);
      CHECK(std::is_sorted(s.eigenvalues.rbegin(), s.eigenvalues.rend()));
    }
  }
}

TEST_CASE("eigh handles exact degeneracy") {
  // diag(2, 2) rotated into a non-diagonal basis by sigma_x mixing.
  const ComplexMatrix m(4, {2.0, 0.0, 0.0, 0.0,  //
                            0.0, 1.0, 1.0, 0.0,  //
                            0.0, 1.0, 1.0, 0.0,  //
                            0.0, 0.0, 0.0, 2.0});
  const Spectrum s = eigh(m);
  CHECK(s.eigenvalues[0] == doctest::Approx(2.0));
  CHECK(s.eigenvalues[1] == doctest::Approx(2.0));
  CHECK(s.eigenvalues[2] == doctest::Approx(2.0));
  CHECK(std::abs(s.eigenvalues[3]) < 1e-15);
  CHECK(gram_defect(s.eigenvectors) < 1e-14);
}

TEST_CASE("eigh is bitwise deterministic") {
  std::mt19937_64 rng(11);
  const ComplexMatrix m = oracle::random_hermitian(rng, 4);
  const Spectrum a = eigh(m);
  const Spectrum b = eigh(m);
  CHECK(a.eigenvalues == b.eigenvalues);
  CHECK(a.eigenvectors == b.eigenvectors);
}

TEST_CASE("non-Hermitian input is rejected") {
  const ComplexMatrix m(2, {1.0, 1.0, 0.0, 1.0});
  try {
    (void)eigh(m);
    FAIL("expected NotHermitian");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotHermitian);
  }
  // Asymmetry under the tolerance is accepted and symmetrized away.
  const ComplexMatrix nearly(2, {1.0, 1.0 + 1e-10, 1.0, 0.0});
  const HermitianMatrix h(nearly);
  CHECK(h(0, 1) == h(1, 0));
}

TEST_CASE("matrix_function examples") {
  const auto exp_fn = [](double x) { return std::exp(x); };
  SUBCASE("exp of zero is identity") {
    const HermitianMatrix zero(ComplexMatrix(4));
    CHECK(matrix_function(zero, exp_fn).matrix().max_abs_diff(ComplexMatrix::identity(4)) ==
          0.0);
  }
  SUBCASE("diagonal action") {
    const std::array<double, 2> d = {std::log(2.0), 0.0};
    const std::array<double, 2> expected = {2.0, 1.0};
    CHECK(matrix_function(HermitianMatrix::diagonal(d), exp_fn)
              .matrix()
              .max_abs_diff(ComplexMatrix::diagonal(expected)) < 1e-15);
  }
  SUBCASE("trace of exp(-H) equals the partition function") {
    const HermitianMatrix h = build_hamiltonian({1.0, 1.0, 1.0});
    const HermitianMatrix e =
        matrix_function(h, [](double x) { return std::exp(-x); });
    const double z = 2.0 * (std::cosh(std::numbers::sqrt2) + std::cosh(1.0));
    CHECK(std::abs(e.trace() - z) < 1e-12);
  }
  SUBCASE("non-finite results are reported") {
    const std::array<double, 2> d = {1000.0, 0.0};
    try {
      (void)matrix_function(HermitianMatrix::diagonal(d), exp_fn);
      FAIL("expected NonFiniteResult");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::NonFiniteResult);
    }
  }
}

TEST_CASE("spectral exp agrees with the Taylor oracle") {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 300; ++trial) {
    ComplexMatrix m = oracle::random_hermitian(rng, 4);
    // Scale so that the spectral radius lands anywhere up to 5.
    const Spectrum s = eigh(m);
    const double radius =
        std::max(std::abs(s.eigenvalues.front()), std::abs(s.eigenvalues.back()));
    const double target = 5.0 * std::uniform_real_distribution<double>(0.0, 1.0)(rng);
    m = m * Complex(target / radius);
    const HermitianMatrix spectral =
        matrix_function(HermitianMatrix(m), [](double x) { return std::exp(x); });
    CHECK(spectral.matrix().max_abs_diff(oracle::taylor_expm(m)) < 1e-9);
  }
}

TEST_CASE("von Neumann entropy examples") {
  CHECK(von_neumann_entropy(diag_state({0.25, 0.25, 0.25, 0.25})) ==
        doctest::Approx(2.0).epsilon(1e-15));

  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 50; ++trial) {
    const auto pure = DensityMatrix::checked(
        oracle::projector(oracle::random_unit_vector(rng, 4)));
    CHECK(std::abs(von_neumann_entropy(pure)) < 1e-10);
  }

  const GravcatParams params{1.0, 1.0, 1.0};
  const double expected = oracle::entropy_bits(oracle::boltzmann_weights(1.0, 1.0, 1.0));
  CHECK(std::abs(von_neumann_entropy(thermal_state(params)) - expected) < 1e-12);
}

TEST_CASE("entropy clamping policy") {
  SUBCASE("noise below 1e-10 is zeroed silently") {
    const auto r = von_neumann_entropy_detail(diag_state({0.5, 0.5, -5e-11, 5e-11}));
    CHECK(r.bits == doctest::Approx(1.0));
    CHECK_FALSE(r.clamped);
  }
  SUBCASE("between 1e-10 and 1e-8 is clamped with a warning") {
    const auto r = von_neumann_entropy_detail(diag_state({0.5, 0.5, -5e-9, 5e-9}));
    CHECK(r.bits == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(r.clamped);
  }
  SUBCASE("beyond 1e-8 is an invalid state") {
    try {
      (void)von_neumann_entropy(diag_state({0.5, 0.5 + 1e-6, -1e-6, 0.0}));
      FAIL("expected InvalidState");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::InvalidState);
    }
  }
}

TEST_CASE("entropy is invariant under Pauli conjugation") {
  std::mt19937_64 rng(31);
  const std::array<const HermitianMatrix*, 4> ps = {&pauli::identity(), &pauli::x(),
                                                    &pauli::y(), &pauli::z()};
  for (int trial = 0; trial < 100; ++trial) {
    const ComplexMatrix rho = oracle::random_density(rng, 4);
    const double s = von_neumann_entropy(DensityMatrix::checked(rho));
    for (const auto* a : ps)
      for (const auto* b : ps) {
        const ComplexMatrix u = kron(a->matrix(), b->matrix());
        const double s2 =
            von_neumann_entropy(DensityMatrix::checked(u * rho * u.adjoint()));
        CHECK(std::abs(s - s2) < 1e-10);
      }
  }
}

TEST_CASE("tensor products and basis ordering") {
  CHECK(tensor(pauli::identity(), pauli::identity()) == HermitianMatrix::identity(4));

  const std::array<double, 4> zi = {1.0, 1.0, -1.0, -1.0};
  CHECK(tensor(pauli::z(), pauli::identity()) == HermitianMatrix::diagonal(zi));

  const HermitianMatrix xx = tensor(pauli::x(), pauli::x());
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j)
      CHECK(xx(i, j) == Complex(i + j == 3 ? 1.0 : 0.0));
}

TEST_CASE("tensor is associative on exactly representable entries") {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<int> small(-4, 4);
  const auto random_int_hermitian = [&] {
    ComplexMatrix m(2);
    m(0, 0) = small(rng);
    m(1, 1) = small(rng);
    m(0, 1) = Complex(small(rng), small(rng));
    m(1, 0) = std::conj(m(0, 1));
    return HermitianMatrix(m);
  };
  for (int trial = 0; trial < 50; ++trial) {
    const auto a = random_int_hermitian();
    const auto b = random_int_hermitian();
    const auto c = random_int_hermitian();
    CHECK(tensor(tensor(a, b), c) == tensor(a, tensor(b, c)));
  }
}

TEST_CASE("partial trace over the first qubit") {
  const auto mixed = diag_state({0.25, 0.25, 0.25, 0.25});
  const std::array<double, 2> half = {0.5, 0.5};
  CHECK(partial_trace_first(mixed).matrix() == ComplexMatrix::diagonal(half));

  const auto ket00 = diag_state({1.0, 0.0, 0.0, 0.0});
  const std::array<double, 2> zero = {1.0, 0.0};
  CHECK(partial_trace_first(ket00).matrix() == ComplexMatrix::diagonal(zero));

  const ThermalClosedForm cf = thermal_closed_form({1.0, 1.0, 1.0});
  const std::array<double, 2> marginal = {cf.alpha_minus + cf.beta, cf.alpha_plus + cf.beta};
  CHECK(partial_trace_first(assemble_thermal_state(cf))
            .matrix()
            .max_abs_diff(ComplexMatrix::diagonal(marginal)) < 1e-15);
}

TEST_CASE("partial trace of a product state returns the second factor") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 200; ++trial) {
    const auto a = DensityMatrix::checked(oracle::random_density(rng, 2));
    const auto b = DensityMatrix::checked(oracle::random_density(rng, 2));
    const auto ab = DensityMatrix::checked(tensor(a.hermitian(), b.hermitian()));
    CHECK(partial_trace_first(ab).matrix().max_abs_diff(b.matrix()) < 1e-12);
  }
}

TEST_CASE("density matrix validation") {
  const std::array<double, 2> short_trace = {0.5, 0.4};
  CHECK_THROWS_AS(DensityMatrix::checked(HermitianMatrix::diagonal(short_trace)), Error);
  const std::array<double, 2> negative = {1.1, -0.1};
  CHECK_THROWS_AS(DensityMatrix::checked(HermitianMatrix::diagonal(negative)), Error);
  const std::array<double, 2> fine = {0.3, 0.7};
  CHECK(DensityMatrix::checked(HermitianMatrix::diagonal(fine)).validated());
  CHECK_FALSE(DensityMatrix::unchecked(HermitianMatrix::diagonal(negative)).validated());
}
