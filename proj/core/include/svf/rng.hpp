#pragma once

#include <cstdint>

#include "svf/linalg.hpp"

namespace svf {

/// SplitMix64 mixer. All randomness in the library is derived from this
/// fully specified integer recurrence, never from implementation-defined
/// standard-library distributions, so seeded runs are reproducible across
/// platforms and thread counts.
inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

/// Small deterministic generator with value semantics.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  /// Generator for the i-th element of a counter-based stream: the result
  /// depends only on (seed, index), so parallel consumers cannot perturb
  /// each other.
  static Rng at_index(std::uint64_t seed, std::uint64_t index) {
    std::uint64_t s = seed;
    const std::uint64_t a = splitmix64(s);
    s = a ^ (index * 0xD6E8FEB86659FD93ULL + 0x2545F4914F6CDD1DULL);
    splitmix64(s);
    return Rng(s);
  }

  std::uint64_t next_u64() { return splitmix64(state_); }

  /// Uniform double in (0, 1].
  double uniform() {
    return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
  }

  /// Uniform double in [lo, hi).
  double uniform(double lo, double hi) {
    return lo + (hi - lo) * static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  /// Standard normal via Box-Muller on the specified uniform stream.
  double gaussian();

  /// Uniform point on the unit sphere S^{dim-1} in R^dim.
  Vec sphere_point(int ambient_dim);

  /// Unit tangent vector at p (Gaussian in the tangent hyperplane,
  /// normalized).
  Vec tangent_at(const Vec& p);

  /// Haar-ish random rotation of R^n (QR of a Gaussian matrix with the
  /// sign of diag(R) fixed).
  Mat rotation(int n);

 private:
  std::uint64_t state_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace svf
