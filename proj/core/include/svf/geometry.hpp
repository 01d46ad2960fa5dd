#pragma once

#include <string>
#include <vector>

#include "svf/linalg.hpp"

namespace svf {

/// Dimension tag for the odd sphere S^{2k+1} embedded in R^{2k+2}.
/// k = 1 is the fully supported case; k = 2, 3 are available for the
/// energy-related functionals.
class SphereDim {
 public:
  explicit SphereDim(int k);

  int k() const { return k_; }
  int sphere_dim() const { return 2 * k_ + 1; }
  int ambient_dim() const { return 2 * k_ + 2; }

  friend bool operator==(const SphereDim&, const SphereDim&) = default;

 private:
  int k_;
};

/// Point of the unit sphere in ambient coordinates. The constructor
/// enforces |coords| = 1 within 1e-12.
class SpherePoint {
 public:
  explicit SpherePoint(Vec coords);

  const Vec& coords() const { return coords_; }
  int ambient_dim() const { return static_cast<int>(coords_.size()); }

 private:
  Vec coords_;
};

/// Ambient vector attached to a sphere point; the constructor enforces
/// tangency <vec, base> = 0 within 1e-10.
class TangentVector {
 public:
  TangentVector(SpherePoint base, Vec vec);

  const SpherePoint& base() const { return base_; }
  const Vec& vec() const { return vec_; }
  double norm() const { return vec_.norm(); }

 private:
  SpherePoint base_;
  Vec vec_;
};

/// Orthonormal tangent frame {e_1, ..., e_2k, v} whose last vector is the
/// field direction. Frames are constructed per point; only frame-invariant
/// quantities (sigma_i, Frobenius norms, Gram determinants) may leave the
/// pointwise computations that consume one.
struct AdaptedFrame {
  SpherePoint base;
  std::vector<TangentVector> e;  // 2k vectors orthogonal to v
  TangentVector v;               // field direction, last frame vector
};

/// Tangential projection w - <w, p> p. Realizes the sphere's Levi-Civita
/// connection applied to ambient derivatives; idempotent.
TangentVector project_tangent(const SpherePoint& p, const Vec& w);

/// Great-circle arc cos(s) p + sin(s) u. Rejects non-unit u (tolerance
/// 1e-8).
SpherePoint geodesic(const SpherePoint& p, const TangentVector& u, double s);

/// Completes {v} to an adapted frame by Gram-Schmidt over the projections
/// of seed_basis onto {p, v}^perp, skipping candidates whose residual norm
/// falls below 1e-6. An empty seed_basis means the ambient standard basis
/// in index order, which makes the construction deterministic.
AdaptedFrame complete_adapted_frame(const SpherePoint& p,
                                    const TangentVector& v,
                                    const std::vector<Vec>& seed_basis = {});

}  // namespace svf
