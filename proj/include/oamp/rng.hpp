#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace oamp {

/// Seeded random stream with explicit counter-based splitting.
///
/// A stream for (base_seed, trial, stage) is derived by hashing the three
/// values, so trials executed in parallel draw exactly the same numbers as
/// a serial run. Gaussian variates use Box-Muller on top of the raw 64-bit
/// stream, which keeps draws identical across platforms and standard
/// library versions.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(mix(seed)) {}

  static Rng split(std::uint64_t base_seed, std::uint64_t trial, std::uint64_t stage) {
    std::uint64_t s = base_seed;
    s = mix(s ^ (0x9e3779b97f4a7c15ull + trial));
    s = mix(s ^ (0xbf58476d1ce4e5b9ull + stage));
    return Rng(s);
  }

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform in [0, 1).
  double uniform() { return double(next_u64() >> 11) * 0x1.0p-53; }

  /// Uniform in (0, 1].
  double uniform_open() { return double((next_u64() >> 11) + 1) * 0x1.0p-53; }

  /// Standard normal.
  double gaussian() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    const double u1 = uniform_open();
    const double u2 = uniform();
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * 3.14159265358979323846 * u2;
    spare_ = radius * std::sin(angle);
    have_spare_ = true;
    return radius * std::cos(angle);
  }

  /// Uniform integer in [0, bound).
  int uniform_int(int bound) { return int(next_u64() % std::uint64_t(bound)); }

 private:
  static std::uint64_t mix(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ull;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  std::mt19937_64 engine_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

/// RNG stage tags used when splitting trial streams.
enum : std::uint64_t {
  kStageMatrix = 1,
  kStageSignal = 2,
  kStageNoise = 3,
  kStageMisc = 4,
};

}  // namespace oamp
