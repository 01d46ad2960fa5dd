#include "svf/rng.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace svf {

double Rng::gaussian() {
  if (have_spare_) {
    have_spare_ = false;
    return spare_;
  }
  const double u1 = uniform();
  const double u2 = uniform();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * std::numbers::pi * u2;
  spare_ = r * std::sin(angle);
  have_spare_ = true;
  return r * std::cos(angle);
}

Vec Rng::sphere_point(int ambient_dim) {
  Vec v(ambient_dim);
  for (int attempt = 0; attempt < 64; ++attempt) {
    for (int i = 0; i < ambient_dim; ++i) v[i] = gaussian();
    const double n = v.norm();
    if (n > 1e-8) return v / n;
  }
  throw std::runtime_error("Rng::sphere_point: degenerate Gaussian draw");
}

Vec Rng::tangent_at(const Vec& p) {
  const int n = static_cast<int>(p.size());
  Vec v(n);
  for (int attempt = 0; attempt < 64; ++attempt) {
    for (int i = 0; i < n; ++i) v[i] = gaussian();
    v -= v.dot(p) * p;
    const double norm = v.norm();
    if (norm > 1e-8) return v / norm;
  }
  throw std::runtime_error("Rng::tangent_at: degenerate tangent draw");
}

Mat Rng::rotation(int n) {
  Mat g(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) g(i, j) = gaussian();
  Eigen::HouseholderQR<Mat> qr(g);
  Mat q = qr.householderQ() * Mat::Identity(n, n);
  const Mat r = qr.matrixQR().template triangularView<Eigen::Upper>();
  for (int j = 0; j < n; ++j) {
    if (r(j, j) < 0.0) q.col(j) = -q.col(j);
  }
  return q;
}

}  // namespace svf
