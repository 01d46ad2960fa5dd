#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "svf/domains.hpp"
#include "svf/fields.hpp"
#include "svf/shape_operators.hpp"

namespace svf {

enum class FunctionalKind {
  kVolume,
  kEnergy,
  kPushforwardVolume,
  kFlux,
  kSigma1Integral,
  kSigma2Integral,
};

std::string to_string(FunctionalKind kind);

/// Value of one functional on one (field, domain) pair, always carrying the
/// quadrature metadata that produced it.
struct FunctionalResult {
  FunctionalKind kind;
  double value = 0.0;
  double std_error = 0.0;  // nonzero only for Monte Carlo domains
  std::string field_label;
  std::string domain_label;
  QuadratureSpec quadrature;
  std::optional<double> t;             // pushforward only
  std::optional<double> min_jacobian;  // pushforward only
  bool diffeomorphism_ok = true;       // pushforward proxy: det > 0 at nodes
};

struct Hypothesis {
  std::string description;
  double value = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

/// One asserted relation lhs (relation) rhs, evaluated with a slack
/// absorbing quadrature error. margin is the signed satisfaction amount
/// (>= -slack means pass for ">=" / "<=", |lhs-rhs| <= slack for "==").
struct Conclusion {
  std::string description;
  double lhs = 0.0;
  double rhs = 0.0;
  std::string relation;  // ">=", "<=", "=="
  double slack = 0.0;
  double margin = 0.0;
  bool pass = false;
};

Conclusion make_conclusion(std::string description, double lhs,
                           std::string relation, double rhs, double slack);

enum class CheckStatus { kPass, kFail, kHypothesesNotMet };

std::string to_string(CheckStatus status);

/// Structured result of one theorem/property check. The conclusion is
/// always computed and reported, but it only counts as a failure when the
/// hypotheses passed; otherwise the status is "hypotheses not met". A
/// failed conclusion under passing hypotheses contradicts a proved bound
/// and is additionally marked red_flag (it indicates an implementation
/// bug, not a counterexample).
struct VerificationReport {
  std::string check_id;
  std::string field_label;
  std::string domain_label;
  std::vector<double> t_values;
  std::vector<Hypothesis> hypotheses;
  Conclusion conclusion;
  CheckStatus status = CheckStatus::kPass;
  bool red_flag = false;
  std::string notes;
};

struct CheckOptions {
  /// Absolute tolerance on integrals normalized by vol(K); also the
  /// one-sided slack scale of conclusion inequalities.
  double tolerance = 1e-7;
  /// Deformation parameters for the pushforward hypotheses.
  std::vector<double> t_list = {0.1, 0.25, 0.5};
  /// Max-norm tolerance for "coincides with the Hopf flow on the
  /// boundary"; catalog fields either match exactly or fail decisively.
  double boundary_match_tol = 1e-9;
};

/// vol(domain): exact closed form for Monte Carlo spheres, quadrature of 1
/// otherwise.
double domain_volume(const Domain& dom, const QuadratureSpec& q);

/// vol(v) = integral of the Gram volume density over the domain.
FunctionalResult volume_of_field(const FieldDefinition& f, const Domain& dom,
                                 const QuadratureSpec& q,
                                 GramVariant variant = GramVariant::kFull);

/// E(v) = (2k+1)/2 vol(K) + 1/2 integral of the Dirichlet density.
FunctionalResult energy_of_field(const FieldDefinition& f, const Domain& dom,
                                 const QuadratureSpec& q);

/// vol(phi_t(K)) by the Jacobian closed form. min_jacobian and
/// diffeomorphism_ok report the positivity proxy for "t small enough";
/// a failed proxy is a distinguished outcome, not an error.
FunctionalResult pushforward_volume(const FieldDefinition& f,
                                    const Domain& dom,
                                    const QuadratureSpec& q, double t);

/// Boundary flux integral of <v, conormal>.
FunctionalResult flux_of_field(const FieldDefinition& f,
                               const BoundaryPatch& boundary,
                               const QuadratureSpec& q);

/// Integral of sigma_i (i = 1 or 2) over the domain.
FunctionalResult sigma_integral(const FieldDefinition& f, const Domain& dom,
                                const QuadratureSpec& q, int i);

/// Proportional-volume ratio
///   [vol(phi_t(K)) / vol(S^3(sqrt(1+t^2)))] / [vol(K) / vol(S^3)],
/// cross-checked against the equivalent form vol(phi_t(K)) /
/// (vol(K)(1+t^2)^{3/2}). The property holds iff the ratio is >= 1.
/// Defined for k = 1.
double pvp_ratio(const FieldDefinition& f, const Domain& dom,
                 const QuadratureSpec& q, double t);

/// Volume and energy minimality under the proportional-volume hypotheses:
/// zero boundary flux, Jacobian positivity and PVP ratio >= 1 at each t.
/// Concludes vol(v) >= 2 vol(K) and E(v) >= (5/2) vol(K), and records the
/// intermediate integrals (sigma_1 integral == 0, sigma_2 integral >=
/// vol(K)). k = 1 only. CLI suite token: "1.4".
std::vector<VerificationReport> check_pvp_minimality(
    const FieldDefinition& f, const DomainBundle& bundle,
    const QuadratureSpec& q, const CheckOptions& opts = {});

/// Lower bounds for fields that coincide with the Hopf flow along the
/// boundary: vol(v) >= 4^k / C(2k,k) vol(K) and E(v) >= ((2k+1)/2 +
/// k/(2k-1)) vol(K). The boundary hypothesis is vacuous on full spheres.
/// CLI suite token: "1.3".
std::vector<VerificationReport> check_boundary_hopf_bounds(
    const FieldDefinition& f, const DomainBundle& bundle,
    const QuadratureSpec& q, const CheckOptions& opts = {});

/// Energy bound E(v) >= ((2k+1)/2 + k) vol(K) for solenoidal fields that
/// coincide with the Hopf flow along the boundary; separately verifies the
/// identity sigma_2 integral == k vol(K) under the same hypotheses.
/// CLI suite token: "1.6".
std::vector<VerificationReport> check_solenoidal_energy(
    const FieldDefinition& f, const DomainBundle& bundle,
    const QuadratureSpec& q, const CheckOptions& opts = {});

/// Complementary-torus dichotomy: of the PVP ratios on K(delta_max) and
/// its complement, at least one must reach 1 (their volume-weighted sum
/// is exactly vol(S^3)). Reports which side satisfies the property.
std::vector<VerificationReport> check_dichotomy(const FieldDefinition& f,
                                                double delta_max,
                                                const QuadratureSpec& q,
                                                double t,
                                                const CheckOptions& opts = {});

/// Algebraic identity suite on random trace-free matrices of sizes 2k in
/// {2, 4, 6}: the diagonal-spread and off-diagonal symmetrization
/// identities hold to 1e-12 and the sigma_2 quadratic bounds hold with the
/// same slack. CLI suite token: "identities".
std::vector<VerificationReport> trace_free_identity_suite(
    std::uint64_t seed, int samples_per_size = 1000);

}  // namespace svf
