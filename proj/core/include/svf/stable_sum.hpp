#pragma once

#include <cmath>

namespace svf {

/// Neumaier compensated accumulator. Summation order defines the result
/// bit-for-bit, which is the reproducibility contract for every integral
/// in the library: nodes may be evaluated concurrently, but values are
/// always fed to a StableSum in fixed index order.
class StableSum {
 public:
  StableSum() = default;
  explicit StableSum(double init) : sum_(init) {}

  void add(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
  }

  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

}  // namespace svf
