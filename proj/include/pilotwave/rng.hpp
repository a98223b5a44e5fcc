#pragma once

#include <cstdint>

#include "pilotwave/vec3.hpp"

namespace pw {

/// SplitMix64; small, fast, and fully specified so seeded runs are
/// bit-reproducible on any platform.
struct SplitMix64 {
  std::uint64_t state;

  explicit SplitMix64(std::uint64_t seed) : state(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  /// Uniform in (0, 1].
  double uniform() { return static_cast<double>((next() >> 11) + 1) * 0x1.0p-53; }
};

inline std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

/// Counter-based per-path stream: the state is a hash of (seed, index), so
/// path i's draws never depend on how paths are partitioned across workers.
inline SplitMix64 per_path_rng(std::uint64_t seed, std::uint64_t index) {
  return SplitMix64(mix64(seed ^ mix64(index * 0xD2B74407B1CE6E93ull + 0x8AF8BA359EBF2305ull)));
}

/// Standard-normal pair via Box-Muller (explicit formulas, no
/// library-distribution dependence).
inline void gaussian_pair(SplitMix64& rng, double& z0, double& z1) {
  const double u1 = rng.uniform();
  const double u2 = rng.uniform();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double th = 2.0 * 3.14159265358979323846 * u2;
  z0 = r * std::cos(th);
  z1 = r * std::sin(th);
}

/// Initial position for path `index`: independent Gaussian per axis.
inline Vec3 sample_initial_position(std::uint64_t seed, std::uint64_t index, const Vec3& center,
                                    const Vec3& sigma) {
  SplitMix64 rng = per_path_rng(seed, index);
  double g0, g1, g2, unused;
  gaussian_pair(rng, g0, g1);
  gaussian_pair(rng, g2, unused);
  return {center.x + sigma.x * g0, center.y + sigma.y * g1, center.z + sigma.z * g2};
}

}  // namespace pw
