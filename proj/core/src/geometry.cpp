#include "svf/geometry.hpp"

#include <cmath>
#include <stdexcept>

namespace svf {

namespace {
constexpr double kPointNormTol = 1e-12;
constexpr double kTangencyTol = 1e-10;
constexpr double kUnitDirectionTol = 1e-8;
constexpr double kFrameResidualTol = 1e-6;
}  // namespace

SphereDim::SphereDim(int k) : k_(k) {
  if (k < 1 || k > 3) {
    throw std::invalid_argument("SphereDim: k must be in {1, 2, 3}, got " +
                                std::to_string(k));
  }
}

SpherePoint::SpherePoint(Vec coords) : coords_(std::move(coords)) {
  const auto n = coords_.size();
  if (n < 4 || n > kMaxAmbientDim || n % 2 != 0) {
    throw std::invalid_argument(
        "SpherePoint: ambient dimension must be 2k+2 with 1 <= k <= 3");
  }
  if (std::abs(coords_.norm() - 1.0) > kPointNormTol) {
    throw std::invalid_argument("SpherePoint: coordinates are off the unit "
                                "sphere, |x| = " +
                                std::to_string(coords_.norm()));
  }
}

TangentVector::TangentVector(SpherePoint base, Vec vec)
    : base_(std::move(base)), vec_(std::move(vec)) {
  if (vec_.size() != base_.coords().size()) {
    throw std::invalid_argument("TangentVector: dimension mismatch");
  }
  if (std::abs(vec_.dot(base_.coords())) > kTangencyTol) {
    throw std::invalid_argument(
        "TangentVector: vector is not tangent, <v, p> = " +
        std::to_string(vec_.dot(base_.coords())));
  }
}

TangentVector project_tangent(const SpherePoint& p, const Vec& w) {
  const Vec& x = p.coords();
  return TangentVector(p, w - w.dot(x) * x);
}

SpherePoint geodesic(const SpherePoint& p, const TangentVector& u, double s) {
  if (std::abs(u.norm() - 1.0) > kUnitDirectionTol) {
    throw std::invalid_argument("geodesic: direction must be unit, |u| = " +
                                std::to_string(u.norm()));
  }
  return SpherePoint(std::cos(s) * p.coords() + std::sin(s) * u.vec());
}

AdaptedFrame complete_adapted_frame(const SpherePoint& p,
                                    const TangentVector& v,
                                    const std::vector<Vec>& seed_basis) {
  if (std::abs(v.norm() - 1.0) > kUnitDirectionTol) {
    throw std::invalid_argument(
        "complete_adapted_frame: field direction must be unit");
  }
  const Vec& x = p.coords();
  const Vec& vv = v.vec();
  const int n = static_cast<int>(x.size());
  const int wanted = n - 2;  // 2k

  std::vector<Vec> accepted;
  accepted.reserve(wanted);

  const int candidates = seed_basis.empty() ? n : static_cast<int>(seed_basis.size());
  for (int c = 0; c < candidates && static_cast<int>(accepted.size()) < wanted;
       ++c) {
    Vec w = seed_basis.empty() ? Vec(Vec::Unit(n, c)) : seed_basis[c];
    // Two orthogonalization passes keep the frame orthonormal to ~1e-14
    // even when a candidate barely clears the residual threshold.
    for (int pass = 0; pass < 2; ++pass) {
      w -= w.dot(x) * x;
      w -= w.dot(vv) * vv;
      for (const Vec& e : accepted) w -= w.dot(e) * e;
    }
    const double norm = w.norm();
    if (norm < kFrameResidualTol) continue;
    accepted.push_back(w / norm);
  }

  if (static_cast<int>(accepted.size()) < wanted) {
    throw std::runtime_error(
        "complete_adapted_frame: fewer than 2k independent directions; "
        "seed basis is degenerate or inputs are corrupted");
  }

  AdaptedFrame frame{p, {}, v};
  frame.e.reserve(wanted);
  for (Vec& e : accepted) frame.e.emplace_back(p, std::move(e));
  return frame;
}

}  // namespace svf
