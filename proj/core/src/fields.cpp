#include "svf/fields.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "svf/expression.hpp"
#include "svf/rng.hpp"

namespace svf {

namespace {

constexpr double kUnitFieldTol = 1e-10;
constexpr double kFdConsistencyTol = 1e-4;

SphereDim dim_from_ambient(int ambient) {
  if (ambient % 2 != 0 || ambient < 4 || ambient > kMaxAmbientDim) {
    throw std::invalid_argument(
        "custom field: component count must be 2k+2 with 1 <= k <= 3, got " +
        std::to_string(ambient));
  }
  return SphereDim((ambient - 2) / 2);
}

}  // namespace

FieldDefinition::FieldDefinition(SphereDim dim, std::string label,
                                 EvalFn evaluate, JacobianFn exact_jacobian)
    : dim_(dim),
      label_(std::move(label)),
      eval_(std::move(evaluate)),
      jacobian_(std::move(exact_jacobian)) {
  if (!eval_) {
    throw std::invalid_argument("FieldDefinition: missing evaluation formula");
  }
}

TangentVector FieldDefinition::evaluate(const SpherePoint& p) const {
  Vec v = eval_(p);
  if (v.size() != p.coords().size()) {
    throw std::runtime_error("FieldDefinition: formula dimension mismatch");
  }
  if (std::abs(v.norm() - 1.0) > kUnitFieldTol) {
    throw std::runtime_error("field '" + label_ +
                             "' is not unit at the sampled point, |v| = " +
                             std::to_string(v.norm()));
  }
  return TangentVector(p, std::move(v));
}

Mat FieldDefinition::ambient_jacobian(const SpherePoint& p) const {
  if (!jacobian_) {
    throw std::logic_error("field '" + label_ + "' has no exact Jacobian");
  }
  return jacobian_(p);
}

FieldDefinition hopf_field(SphereDim dim) {
  const int n = dim.ambient_dim();
  Mat j = Mat::Zero(n, n);
  for (int i = 0; i < n; i += 2) {
    j(i, i + 1) = -1.0;
    j(i + 1, i) = 1.0;
  }
  return FieldDefinition(
      dim, "hopf",
      [j](const SpherePoint& p) -> Vec { return j * p.coords(); },
      [j](const SpherePoint&) -> Mat { return j; });
}

FieldDefinition lambda_field(double lambda) {
  if (!(lambda >= 1.0)) {
    throw std::invalid_argument("lambda_field: requires lambda >= 1, got " +
                                std::to_string(lambda));
  }
  const double c = lambda * lambda - 1.0;

  auto eval = [lambda, c](const SpherePoint& p) -> Vec {
    const Vec& q = p.coords();
    const double s = 1.0 / std::sqrt(1.0 + c * (q[0] * q[0] + q[1] * q[1]));
    Vec v(4);
    v << -lambda * q[1], lambda * q[0], -q[3], q[2];
    return s * v;
  };

  auto jacobian = [lambda, c](const SpherePoint& p) -> Mat {
    const Vec& q = p.coords();
    const double s = 1.0 / std::sqrt(1.0 + c * (q[0] * q[0] + q[1] * q[1]));
    const double s3 = s * s * s;
    Vec u(4);
    u << -lambda * q[1], lambda * q[0], -q[3], q[2];
    Vec grad_s(4);
    grad_s << -c * q[0] * s3, -c * q[1] * s3, 0.0, 0.0;
    Mat du(4, 4);
    du << 0.0, -lambda, 0.0, 0.0,
          lambda, 0.0, 0.0, 0.0,
          0.0, 0.0, 0.0, -1.0,
          0.0, 0.0, 1.0, 0.0;
    return u * grad_s.transpose() + s * du;
  };

  std::ostringstream label;
  label << "lambda:" << lambda;
  return FieldDefinition(SphereDim(1), label.str(), eval, jacobian);
}

FieldDefinition custom_field(const std::vector<std::string>& components,
                             std::string label) {
  const int ambient = static_cast<int>(components.size());
  const SphereDim dim = dim_from_ambient(ambient);

  std::vector<std::string> vars;
  for (int i = 0; i < ambient; ++i) vars.push_back("x" + std::to_string(i + 1));

  std::vector<Expression> exprs;
  exprs.reserve(components.size());
  for (const std::string& c : components) exprs.push_back(Expression::parse(c, vars));

  auto eval = [exprs, ambient, label](const SpherePoint& p) -> Vec {
    Vec raw(ambient);
    std::span<const double> vals(p.coords().data(),
                                 static_cast<std::size_t>(ambient));
    for (int i = 0; i < ambient; ++i) {
      raw[i] = exprs[i].evaluate(vals);
      if (!std::isfinite(raw[i])) {
        throw std::runtime_error("custom field '" + label +
                                 "': component " + std::to_string(i + 1) +
                                 " is not finite at the sampled point");
      }
    }
    const Vec& x = p.coords();
    Vec proj = raw - raw.dot(x) * x;
    const double norm = proj.norm();
    if (norm < 1e-12) {
      std::ostringstream msg;
      msg << "custom field '" << label
          << "' degenerates (tangential part vanishes) at point "
          << x.transpose();
      throw std::runtime_error(msg.str());
    }
    return proj / norm;
  };

  FieldDefinition field(dim, std::move(label), eval);

  // Validation pass: unit-tangency on a deterministic sample. Fields that
  // are only defined on a subdomain may degenerate at a few sample points;
  // widespread degeneracy means the formula is unusable.
  Rng rng(0x5f5fc0de);
  const int samples = 256;
  int degenerate = 0;
  for (int i = 0; i < samples; ++i) {
    const SpherePoint p(rng.sphere_point(ambient));
    try {
      field.evaluate(p);  // throws unless unit and tangent
    } catch (const std::runtime_error&) {
      ++degenerate;
    }
  }
  if (degenerate > samples / 4) {
    throw std::invalid_argument(
        "custom field '" + field.label() + "': formula degenerates at " +
        std::to_string(degenerate) + "/" + std::to_string(samples) +
        " sample points");
  }
  return field;
}

FieldDefinition custom_field_from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::invalid_argument("cannot open field file '" + path + "'");
  }
  std::vector<std::string> components;
  std::string line;
  while (std::getline(in, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    const auto first = line.find_first_not_of(" \t\r\n");
    if (first == std::string::npos) continue;
    const auto last = line.find_last_not_of(" \t\r\n");
    components.push_back(line.substr(first, last - first + 1));
  }
  return custom_field(components, "custom:" + path);
}

TangentVector covariant_derivative(const FieldDefinition& f,
                                   const SpherePoint& p,
                                   const TangentVector& u) {
  if (std::abs(u.norm() - 1.0) > 1e-8) {
    throw std::invalid_argument(
        "covariant_derivative: direction must be unit, |u| = " +
        std::to_string(u.norm()));
  }
  if (f.has_exact_jacobian()) {
    return project_tangent(p, f.ambient_jacobian(p) * u.vec());
  }

  auto central = [&](double h) -> Vec {
    const Vec forward = f.evaluate(geodesic(p, u, h)).vec();
    const Vec backward = f.evaluate(geodesic(p, u, -h)).vec();
    return (forward - backward) / (2.0 * h);
  };

  const Vec est = central(kCovariantFdStep);
  const Vec est_half = central(kCovariantFdStep / 2.0);
  if ((est - est_half).cwiseAbs().maxCoeff() > kFdConsistencyTol) {
    throw std::runtime_error(
        "covariant_derivative: finite-difference estimates at h and h/2 "
        "disagree; field '" + f.label() + "' is not smooth at this point");
  }
  return project_tangent(p, est);
}

double divergence(const FieldDefinition& f, const SpherePoint& p) {
  const TangentVector v = f.evaluate(p);
  const AdaptedFrame frame = complete_adapted_frame(p, v);
  double sum = 0.0;
  for (const TangentVector& e : frame.e) {
    sum += covariant_derivative(f, p, e).vec().dot(e.vec());
  }
  sum += covariant_derivative(f, p, frame.v).vec().dot(frame.v.vec());
  return sum;
}

}  // namespace svf
