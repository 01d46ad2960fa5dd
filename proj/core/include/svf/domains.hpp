#pragma once

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "svf/geometry.hpp"
#include "svf/linalg.hpp"
#include "svf/quadrature.hpp"

namespace svf {

/// One parametrized patch of a domain: a chart from a parameter box onto
/// the sphere together with its exact (or numerically derived) volume
/// element sqrt(det G).
struct ChartPiece {
  std::function<SpherePoint(const Vec& params)> chart;
  std::vector<std::pair<double, double>> box;
  std::vector<bool> periodic;
  std::function<double(const Vec& params)> volume_element;
};

/// Region of S^{2k+1} to integrate over. Catalog domains carry one chart;
/// the full k = 1 sphere is the union of the two solid-torus charts (each
/// analytic on its closed box, unlike a single chart pushed through the
/// coordinate collapse at delta = 1). Spheres with k >= 2 have no chart
/// catalog and are integrated by Monte Carlo.
struct Domain {
  std::string label;
  SphereDim dim;
  std::vector<ChartPiece> pieces;
  bool mc_sphere = false;
};

/// Boundary hypersurface with outward conormal, parametrized by 2k
/// parameters.
struct BoundaryPatch {
  std::string label;
  std::function<SpherePoint(const Vec& params)> chart;
  std::vector<std::pair<double, double>> box;
  std::vector<bool> periodic;
  std::function<double(const Vec& params)> area_element;
  /// Unit, tangent to the sphere, normal to the boundary, outward from the
  /// domain.
  std::function<TangentVector(const Vec& params)> conormal;
};

struct DomainBundle {
  Domain domain;
  std::optional<BoundaryPatch> boundary;
};

using Integrand = std::function<double(const SpherePoint&)>;
using BoundaryIntegrand =
    std::function<double(const SpherePoint&, const TangentVector& conormal)>;

/// Result of an integral together with the diagnostics the verification
/// layer needs: min/max of the raw integrand over the nodes and, for Monte
/// Carlo, the standard error of the estimate.
struct IntegralResult {
  double value = 0.0;
  double std_error = 0.0;
  double min_integrand = 0.0;
  double max_integrand = 0.0;
  std::size_t nodes = 0;
  bool monte_carlo = false;
};

/// Tensor-product quadrature sum_i w_i g(chart(u_i)) vol_elem(u_i) with
/// fixed-order compensated accumulation (bit-for-bit deterministic; node
/// evaluation may run on several threads). Monte Carlo domains dispatch to
/// monte_carlo_sphere. Integrand failures are rethrown with the node
/// coordinates attached.
IntegralResult integrate(const Domain& dom, const QuadratureSpec& q,
                         const Integrand& g);

/// 2k-dimensional quadrature of g against the boundary area element. Uses
/// the first 2k entries of q.nodes_per_axis.
IntegralResult integrate_boundary(const BoundaryPatch& b,
                                  const QuadratureSpec& q,
                                  const BoundaryIntegrand& g);

/// Uniform Monte Carlo on S^{2k+1}: samples are normalized Gaussian
/// vectors drawn from a counter-based stream, so the estimate depends only
/// on (rng_seed, mc_samples). Returns mean * vol(S^{2k+1}) and a standard
/// error.
IntegralResult monte_carlo_sphere(SphereDim dim, const QuadratureSpec& q,
                                  const Integrand& g);

/// vol(S^{2k+1}) = 2 pi^{k+1} / k!
double sphere_volume(SphereDim dim);

/// Solid torus K = {x^2 + y^2 <= delta_max^2} in S^3 with the chart
///   x(theta, alpha, delta) = (delta cos theta, delta sin theta,
///                             sqrt(1-delta^2) cos alpha,
///                             sqrt(1-delta^2) sin alpha),
/// volume element exactly delta, boundary at delta = delta_max with
/// outward conormal along d/d delta. delta_max = 1/sqrt(2) gives the
/// Clifford torus boundary.
DomainBundle solid_torus(double delta_max = 0.7071067811865476);

/// Complementary solid torus K^c with its own non-degenerate chart
///   y(theta, alpha, delta) = (sqrt(1-delta^2) cos theta, ..., delta cos
///   alpha, delta sin alpha), delta in [0, sqrt(1 - delta_max^2)].
/// K and K^c partition S^3 up to the shared boundary torus, and the two
/// conormals are opposite there.
DomainBundle complement_torus(double delta_max = 0.7071067811865476);

/// Full sphere: chart union for k = 1, Monte Carlo for k in {2, 3}.
DomainBundle sphere_domain(SphereDim dim);

/// User-defined chart domain from a key = value text file:
///   k = 1
///   box = 0:6.283185307179586, 0:6.283185307179586, 0:0.7071067811865476
///   periodic = 1, 1, 0
///   x1 = u3*cos(u1)            (one line per ambient component)
///   ...
///   volume_element = u3        (optional; cross-checked against sqrt(det G))
///   boundary_axis = 3          (optional; boundary at the axis upper end)
/// Charts are validated to land on the sphere; a missing volume element is
/// computed numerically from the first fundamental form.
DomainBundle custom_domain_from_file(const std::string& path);

}  // namespace svf
