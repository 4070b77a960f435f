#pragma once

#include <cstdint>

namespace gravcat {

/// SplitMix64 (Steele, Lea, Flood). The stream and the mapping to doubles
/// are part of the verification report contract; do not change them.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}

  std::uint64_t next() noexcept {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  /// Top 53 bits scaled to [0, 1).
  double unit() noexcept {
    return static_cast<double>(next() >> 11) * 0x1.0p-53;
  }

  /// lo + (hi - lo) * unit(), in [lo, hi).
  double uniform(double lo, double hi) noexcept {
    return lo + (hi - lo) * unit();
  }

 private:
  std::uint64_t state_;
};

}  // namespace gravcat
