#pragma once

#include <vector>

#include "svf/fields.hpp"
#include "svf/geometry.hpp"
#include "svf/linalg.hpp"

namespace svf {

/// Pointwise derivative data of a unit field in an adapted frame:
///   h(i,j)  = <nabla_{e_i} v, e_j>          (2k x 2k)
///   a_v(i)  = <nabla_v v, e_i>              (length 2k)
///   sigma   = elementary symmetric functions of h, i.e. the coefficients
///             of det(I + t h) in powers of t (sigma[0] = sigma_1, ...).
/// h and a_v depend on the frame; sigma, |h|_F and |a_v| do not.
struct ShapeData {
  AdaptedFrame frame;
  Mat h;
  Vec a_v;
  Vec sigma;
};

/// Elementary symmetric functions e_1..e_n of an n x n matrix via Newton's
/// identities on the power traces (eigenvalue-free; exact at these sizes).
Vec elementary_symmetric(const Mat& m);

/// Builds the adapted frame at p and fills h, a_v and sigma. Deterministic
/// for a fixed seed basis.
ShapeData shape_data(const FieldDefinition& f, const SpherePoint& p,
                     const std::vector<Vec>& seed_basis = {});

enum class GramVariant {
  kFull,        // all rows of the section differential, including nabla_v v
  kShapeBlock,  // h-block only, for comparison
};

/// Volume density sqrt(det(I_{2k} + A^T A)) where the rows of A are the
/// frame components of nabla_{e_1} v, ..., nabla_{e_2k} v and (in the full
/// variant) nabla_v v. The full variant is the Gram determinant of the
/// section differential.
double volume_integrand(const ShapeData& sd,
                        GramVariant variant = GramVariant::kFull);
double volume_integrand(const FieldDefinition& f, const SpherePoint& p,
                        GramVariant variant = GramVariant::kFull);

/// Dirichlet density |h|_F^2 + |a_v|^2 (the bracketed integrand of the
/// energy functional; the (2k+1)/2 vol(K) offset is added by the
/// functional layer).
double energy_integrand(const ShapeData& sd);
double energy_integrand(const FieldDefinition& f, const SpherePoint& p);

/// Deformation parameter of the Milnor map x -> x + t v(x). The map is a
/// diffeomorphism onto the sphere of radius sqrt(1+t^2) only for t small
/// enough; the operational check is positivity of the Jacobian determinant
/// at every quadrature node, performed by the functional layer.
struct MilnorMapConfig {
  explicit MilnorMapConfig(double t_value);
  double t;
};

/// phi_t(p) = p + t v(p); an ambient point of norm sqrt(1+t^2).
Vec milnor_map(const FieldDefinition& f, const SpherePoint& p,
               const MilnorMapConfig& cfg);

/// Closed-form Jacobian determinant of the Milnor map,
///   det(d phi_t) = sqrt(1+t^2) (1 + sum_i sigma_i t^i).
/// May be non-positive; callers treat that as the "not a diffeomorphism"
/// warning state rather than an error.
double milnor_jacobian(const ShapeData& sd, const MilnorMapConfig& cfg);
double milnor_jacobian(const FieldDefinition& f, const SpherePoint& p,
                       const MilnorMapConfig& cfg);

/// Companion diagnostic: the same determinant measured directly, by
/// finite-differencing phi_t along the frame directions and expressing the
/// images in an orthonormal tangent basis at the image point (orientation
/// transported from the source frame). Independent of the sigma_i route.
double milnor_jacobian_fd(const FieldDefinition& f, const SpherePoint& p,
                          const MilnorMapConfig& cfg, double step = 1e-5);

}  // namespace svf
