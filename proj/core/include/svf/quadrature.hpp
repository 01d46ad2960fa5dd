#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

namespace svf {

/// Deterministic quadrature configuration. Periodic axes always use the
/// periodic trapezoid rule and non-periodic axes Gauss-Legendre; the rule
/// assignment is derived from the domain, not chosen here.
struct QuadratureSpec {
  std::vector<int> nodes_per_axis = {64, 64, 48};
  std::optional<std::int64_t> mc_samples;
  std::uint64_t rng_seed = 42;
};

struct Rule1D {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// Gauss-Legendre rule with n nodes on [lo, hi] (Newton on the Legendre
/// recurrence; nodes accurate to ~1e-15).
Rule1D gauss_legendre(int n, double lo, double hi);

/// n equispaced nodes on [lo, hi) with weight (hi-lo)/n; spectrally
/// accurate for smooth periodic integrands.
Rule1D periodic_trapezoid(int n, double lo, double hi);

/// Runs fn over [0, n) split into contiguous chunks, possibly on several
/// threads. Results must be written to per-index slots; the caller then
/// reduces them in fixed order, which keeps every integral bit-for-bit
/// reproducible regardless of thread count. The first exception thrown by
/// any chunk is rethrown on the calling thread.
void parallel_for_chunks(
    std::size_t n,
    const std::function<void(std::size_t begin, std::size_t end)>& fn);

}  // namespace svf
