#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "svf/geometry.hpp"
#include "svf/linalg.hpp"

namespace svf {

/// Unit tangent vector field given by an ambient closed-form formula,
/// optionally with the exact ambient Jacobian of that formula. Immutable
/// after construction and safe to share across threads.
class FieldDefinition {
 public:
  using EvalFn = std::function<Vec(const SpherePoint&)>;
  using JacobianFn = std::function<Mat(const SpherePoint&)>;

  FieldDefinition(SphereDim dim, std::string label, EvalFn evaluate,
                  JacobianFn exact_jacobian = {});

  const SphereDim& dim() const { return dim_; }
  const std::string& label() const { return label_; }
  bool has_exact_jacobian() const { return static_cast<bool>(jacobian_); }

  /// Evaluates the field; enforces the unit-tangent invariant to 1e-10.
  TangentVector evaluate(const SpherePoint& p) const;

  /// Ambient matrix of partial derivatives of the defining formula.
  /// Throws std::logic_error when no exact Jacobian was provided.
  Mat ambient_jacobian(const SpherePoint& p) const;

 private:
  SphereDim dim_;
  std::string label_;
  EvalFn eval_;
  JacobianFn jacobian_;
};

/// Hopf flow H(x) = i·x under R^{2k+2} ~ C^{k+1}:
/// (x1, y1, ..., x_{k+1}, y_{k+1}) -> (-y1, x1, ..., -y_{k+1}, x_{k+1}).
/// Carries its (constant) exact Jacobian.
FieldDefinition hopf_field(SphereDim dim);

/// The one-parameter family on S^3
///   v_lambda(x,y,z,w) = (-lambda y, lambda x, -w, z)
///                       / sqrt(1 + (lambda^2 - 1)(x^2 + y^2)),
/// solenoidal and tangent to every torus x^2 + y^2 = const. lambda = 1 is
/// the Hopf flow; lambda < 1 is rejected. The exact Jacobian is the
/// hand-differentiated closed form, not a finite difference.
FieldDefinition lambda_field(double lambda);

/// User-defined field: one expression per ambient component in variables
/// x1..x_{2k+2} (k inferred from the component count). Evaluation projects
/// the raw vector tangentially and normalizes it; construction runs a
/// validation pass asserting unit-tangency on a deterministic sample and
/// rejects formulas that are degenerate on a large fraction of the sphere.
FieldDefinition custom_field(const std::vector<std::string>& components,
                             std::string label);

/// Reads a custom field from a text file with 2k+2 expression lines
/// (blank lines and '#' comments ignored).
FieldDefinition custom_field_from_file(const std::string& path);

/// Covariant derivative nabla_u v of the field at p along the unit tangent
/// direction u: the tangential projection of the ambient directional
/// derivative. Uses the exact Jacobian when present; otherwise central
/// finite differences along geodesic(p, u, +-h) with h = 1e-5, with a
/// half-step consistency check that signals non-smooth fields.
TangentVector covariant_derivative(const FieldDefinition& f,
                                   const SpherePoint& p,
                                   const TangentVector& u);

/// Intrinsic divergence: sum of <nabla_{e_a} v, e_a> over a full adapted
/// frame (the v-term vanishes identically for unit fields). Equals sigma_1
/// of the shape data at p.
double divergence(const FieldDefinition& f, const SpherePoint& p);

/// Step used by the finite-difference covariant derivative fallback.
inline constexpr double kCovariantFdStep = 1e-5;

}  // namespace svf
