#include "svf/quadrature.hpp"

#include <cmath>
#include <exception>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <thread>

namespace svf {

Rule1D gauss_legendre(int n, double lo, double hi) {
  if (n < 1) throw std::invalid_argument("gauss_legendre: need n >= 1 nodes");
  if (!(lo < hi)) throw std::invalid_argument("gauss_legendre: empty interval");

  Rule1D rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);

  const int half = (n + 1) / 2;
  for (int i = 0; i < half; ++i) {
    // Tricomi initial guess, then Newton on P_n.
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = x;
      for (int j = 2; j <= n; ++j) {
        const double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    // recompute derivative at the converged node for the weight
    {
      double p0 = 1.0, p1 = x;
      for (int j = 2; j <= n; ++j) {
        const double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
    }
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    const double mid = 0.5 * (lo + hi);
    const double halfw = 0.5 * (hi - lo);
    rule.nodes[i] = mid - halfw * x;
    rule.nodes[n - 1 - i] = mid + halfw * x;
    rule.weights[i] = halfw * w;
    rule.weights[n - 1 - i] = halfw * w;
  }
  if (n % 2 == 1) rule.nodes[n / 2] = 0.5 * (lo + hi);
  return rule;
}

Rule1D periodic_trapezoid(int n, double lo, double hi) {
  if (n < 1) {
    throw std::invalid_argument("periodic_trapezoid: need n >= 1 nodes");
  }
  Rule1D rule;
  rule.nodes.resize(n);
  rule.weights.assign(n, (hi - lo) / n);
  for (int i = 0; i < n; ++i) rule.nodes[i] = lo + (hi - lo) * i / n;
  return rule;
}

void parallel_for_chunks(
    std::size_t n,
    const std::function<void(std::size_t, std::size_t)>& fn) {
  if (n == 0) return;

  const unsigned hw = std::thread::hardware_concurrency();
  const std::size_t max_threads = hw == 0 ? 1 : hw;
  // Serial below a modest grain; thread startup would dominate.
  if (n < 8192 || max_threads <= 1) {
    fn(0, n);
    return;
  }

  const std::size_t workers = std::min<std::size_t>(max_threads, 8);
  const std::size_t chunk = (n + workers - 1) / workers;

  std::exception_ptr first_error;
  std::mutex error_mutex;
  std::vector<std::thread> threads;
  threads.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    const std::size_t begin = w * chunk;
    const std::size_t end = std::min(n, begin + chunk);
    if (begin >= end) break;
    threads.emplace_back([&, begin, end] {
      try {
        fn(begin, end);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
      }
    });
  }
  for (std::thread& t : threads) t.join();
  if (first_error) std::rethrow_exception(first_error);
}

}  // namespace svf
