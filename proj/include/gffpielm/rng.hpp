#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

namespace gffpielm {

/// Seeded random stream with platform-independent conversions.
///
/// std::mt19937_64 has a fully specified output sequence, but the standard
/// distributions do not, so uniform and normal variates are derived here by
/// hand. One normal() call consumes exactly two raw draws (Box-Muller, cosine
/// branch only).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform on [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  double normal() {
    // 1 - u keeps the logarithm argument in (0, 1].
    const double u1 = 1.0 - uniform();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
  }

 private:
  std::mt19937_64 engine_;
};

/// splitmix64 finalizer; derives independent child seeds from a base seed.
constexpr std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream) {
  std::uint64_t z = base + 0x9E3779B97F4A7C15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

}  // namespace gffpielm
