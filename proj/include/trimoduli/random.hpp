#pragma once

#include "trimoduli/scalar.hpp"

#include <cstdint>
#include <random>

namespace trimoduli {

/// Portable standard-normal stream: std::mt19937_64 (fully specified by the
/// standard) feeding a hand-written Box-Muller transform, so a seed yields the
/// same numbers on every conforming platform.
class GaussianStream {
 public:
  static constexpr const char* kName = "mt19937_64+box-muller/v1";

  explicit GaussianStream(std::uint64_t seed) : engine_(seed) {}

  double next();
  Complex next_complex() {
    const double re = next();
    return {re, next()};
  }
  /// Uniform in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace trimoduli
