#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace rgbr {

/// Generator used everywhere randomness appears: std::mt19937_64 (fully
/// specified by the C++ standard) with doubles built from the top 53 bits,
/// so streams are identical across standard libraries.
inline constexpr std::string_view kRngAlgorithm = "mt19937_64/u53";

/// SplitMix64 finalizer; derives independent stream seeds from (seed, stream).
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream);

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform on [0, 1).
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  /// Uniform on [lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  /// Uniform integer on [0, n).
  std::uint64_t below(std::uint64_t n);
  bool bernoulli(double p) { return uniform() < p; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace rgbr
