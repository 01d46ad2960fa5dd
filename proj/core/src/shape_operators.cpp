#include "svf/shape_operators.hpp"

#include <cmath>
#include <stdexcept>

namespace svf {

Vec elementary_symmetric(const Mat& m) {
  const int n = static_cast<int>(m.rows());
  if (m.cols() != n) {
    throw std::invalid_argument("elementary_symmetric: matrix must be square");
  }
  // power traces p_j = tr(m^j), j = 1..n
  Vec power_traces(n);
  Mat acc = m;
  power_traces[0] = acc.trace();
  for (int j = 1; j < n; ++j) {
    acc = acc * m;
    power_traces[j] = acc.trace();
  }
  // Newton: e_m = (1/m) sum_{j=1}^{m} (-1)^{j-1} e_{m-j} p_j, e_0 = 1
  Vec e(n + 1);
  e[0] = 1.0;
  for (int k = 1; k <= n; ++k) {
    double sum = 0.0;
    double sign = 1.0;
    for (int j = 1; j <= k; ++j) {
      sum += sign * e[k - j] * power_traces[j - 1];
      sign = -sign;
    }
    e[k] = sum / k;
  }
  return e.tail(n);
}

ShapeData shape_data(const FieldDefinition& f, const SpherePoint& p,
                     const std::vector<Vec>& seed_basis) {
  const TangentVector v = f.evaluate(p);
  AdaptedFrame frame = complete_adapted_frame(p, v, seed_basis);
  const int m = static_cast<int>(frame.e.size());  // 2k

  Mat h(m, m);
  for (int i = 0; i < m; ++i) {
    const Vec dv = covariant_derivative(f, p, frame.e[i]).vec();
    for (int j = 0; j < m; ++j) h(i, j) = dv.dot(frame.e[j].vec());
  }

  const Vec dvv = covariant_derivative(f, p, frame.v).vec();
  Vec a_v(m);
  for (int j = 0; j < m; ++j) a_v[j] = dvv.dot(frame.e[j].vec());

  Vec sigma = elementary_symmetric(h);
  return ShapeData{std::move(frame), std::move(h), std::move(a_v),
                   std::move(sigma)};
}

double volume_integrand(const ShapeData& sd, GramVariant variant) {
  const int m = static_cast<int>(sd.h.rows());
  const int rows = variant == GramVariant::kFull ? m + 1 : m;
  Mat a(rows, m);
  a.topRows(m) = sd.h;
  if (variant == GramVariant::kFull) a.row(m) = sd.a_v.transpose();
  const Mat gram = Mat::Identity(m, m) + a.transpose() * a;
  return std::sqrt(gram.determinant());
}

double volume_integrand(const FieldDefinition& f, const SpherePoint& p,
                        GramVariant variant) {
  return volume_integrand(shape_data(f, p), variant);
}

double energy_integrand(const ShapeData& sd) {
  return sd.h.squaredNorm() + sd.a_v.squaredNorm();
}

double energy_integrand(const FieldDefinition& f, const SpherePoint& p) {
  return energy_integrand(shape_data(f, p));
}

MilnorMapConfig::MilnorMapConfig(double t_value) : t(t_value) {
  if (!(t >= 0.0) || !std::isfinite(t)) {
    throw std::invalid_argument("MilnorMapConfig: t must be finite and >= 0");
  }
}

Vec milnor_map(const FieldDefinition& f, const SpherePoint& p,
               const MilnorMapConfig& cfg) {
  return p.coords() + cfg.t * f.evaluate(p).vec();
}

double milnor_jacobian(const ShapeData& sd, const MilnorMapConfig& cfg) {
  double poly = 1.0;
  double tpow = 1.0;
  for (int i = 0; i < sd.sigma.size(); ++i) {
    tpow *= cfg.t;
    poly += sd.sigma[i] * tpow;
  }
  return std::sqrt(1.0 + cfg.t * cfg.t) * poly;
}

double milnor_jacobian(const FieldDefinition& f, const SpherePoint& p,
                       const MilnorMapConfig& cfg) {
  return milnor_jacobian(shape_data(f, p), cfg);
}

double milnor_jacobian_fd(const FieldDefinition& f, const SpherePoint& p,
                          const MilnorMapConfig& cfg, double step) {
  const TangentVector v = f.evaluate(p);
  const AdaptedFrame frame = complete_adapted_frame(p, v);
  const int n = static_cast<int>(p.coords().size());
  const int dim = n - 1;  // 2k+1

  // Source frame in order {e_1, ..., e_2k, v}.
  std::vector<const TangentVector*> source;
  source.reserve(dim);
  for (const TangentVector& e : frame.e) source.push_back(&e);
  source.push_back(&frame.v);

  // Image point and its unit normal on the target sphere.
  const Vec q = p.coords() + cfg.t * v.vec();
  const Vec nq = q / q.norm();

  // Orthonormal tangent basis at the image, produced by projecting the
  // source frame onto nq^perp. <p, nq> = 1/sqrt(1+t^2) > 0, so this
  // transports the source orientation and the determinant below is the
  // orientation-compatible one (equal to +1 at t = 0).
  std::vector<Vec> target;
  target.reserve(dim);
  for (const TangentVector* e : source) {
    Vec w = e->vec();
    for (int pass = 0; pass < 2; ++pass) {
      w -= w.dot(nq) * nq;
      for (const Vec& t : target) w -= w.dot(t) * t;
    }
    const double norm = w.norm();
    if (norm < 1e-8) {
      throw std::runtime_error(
          "milnor_jacobian_fd: degenerate target frame (t too large?)");
    }
    target.push_back(w / norm);
  }

  Mat jac(dim, dim);
  for (int a = 0; a < dim; ++a) {
    const SpherePoint forward = geodesic(p, *source[a], step);
    const SpherePoint backward = geodesic(p, *source[a], -step);
    const Vec df = (forward.coords() + cfg.t * f.evaluate(forward).vec() -
                    backward.coords() - cfg.t * f.evaluate(backward).vec()) /
                   (2.0 * step);
    for (int b = 0; b < dim; ++b) jac(a, b) = df.dot(target[b]);
  }
  return jac.determinant();
}

}  // namespace svf
