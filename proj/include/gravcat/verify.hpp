#pragma once

// Cross-engine verification: every closed-form quantity against its
// independent numeric counterpart over seeded random parameter draws.
//
// Each sample consumes, in order, from one SplitMix64 stream seeded with
// `seed`:
//   omega = 5 (1 - u)            in (0, 5]
//   gamma = 5 u                  in [0, 5]
//   T     = 0.05 + 9.95 u        in [0.05, 10]
//   p     = 0.99 u               in [0, 0.99]
//   16 complex entries (re, im each 2u - 1) of a matrix A, row-major; the
//   generic test state is A A^dagger / tr(A A^dagger).

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "gravcat/matrix.hpp"
#include "gravcat/random.hpp"
#include "gravcat/thermal.hpp"

namespace gravcat {

struct VerificationCheck {
  std::string name;
  double max_deviation = 0.0;
  double threshold = 0.0;
  /// Draw index where max_deviation occurred.
  std::uint64_t worst_sample = 0;

  bool passed() const noexcept { return max_deviation < threshold; }
};

struct VerificationReport {
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;
  std::vector<VerificationCheck> checks;

  bool passed() const noexcept;
};

struct VerificationDraw {
  GravcatParams params;
  double p = 0.0;
  DensityMatrix generic_state;
};

VerificationDraw draw_sample(SplitMix64& rng);

VerificationReport run_verification(std::uint64_t samples, std::uint64_t seed);

/// Deterministic JSON; identical inputs give byte-identical output.
void write_json(const VerificationReport& report, std::ostream& out);

}  // namespace gravcat
