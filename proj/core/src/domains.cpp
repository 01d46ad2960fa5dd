#include "svf/domains.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "svf/expression.hpp"
#include "svf/rng.hpp"
#include "svf/stable_sum.hpp"

namespace svf {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::string format_params(const Vec& u) {
  std::ostringstream os;
  os << "(";
  for (int i = 0; i < u.size(); ++i) os << (i ? ", " : "") << u[i];
  os << ")";
  return os.str();
}

struct TensorGrid {
  std::vector<Rule1D> rules;
  std::vector<std::size_t> sizes;
  std::size_t total = 1;

  TensorGrid(const ChartPiece& piece, const std::vector<int>& nodes) {
    const std::size_t dims = piece.box.size();
    if (nodes.size() != dims) {
      throw std::invalid_argument(
          "quadrature spec has " + std::to_string(nodes.size()) +
          " node counts but the chart has " + std::to_string(dims) + " axes");
    }
    for (std::size_t a = 0; a < dims; ++a) {
      const auto [lo, hi] = piece.box[a];
      rules.push_back(piece.periodic[a] ? periodic_trapezoid(nodes[a], lo, hi)
                                        : gauss_legendre(nodes[a], lo, hi));
      sizes.push_back(static_cast<std::size_t>(nodes[a]));
      total *= sizes.back();
    }
  }

  // Row-major decode: axis 0 slowest, last axis fastest.
  void decode(std::size_t flat, Vec& u, double& weight) const {
    weight = 1.0;
    for (std::size_t a = sizes.size(); a-- > 0;) {
      const std::size_t i = flat % sizes[a];
      flat /= sizes[a];
      u[static_cast<int>(a)] = rules[a].nodes[i];
      weight *= rules[a].weights[i];
    }
  }
};

// Shared tensor-product driver: fills weighted and raw value buffers in
// parallel, then reduces in index order.
void accumulate_piece(const ChartPiece& piece, const std::vector<int>& nodes,
                      const Integrand& g, StableSum& sum, double& min_val,
                      double& max_val, std::size_t& node_count) {
  const TensorGrid grid(piece, nodes);
  std::vector<double> weighted(grid.total);
  std::vector<double> raw(grid.total);

  parallel_for_chunks(grid.total, [&](std::size_t begin, std::size_t end) {
    const int dims = static_cast<int>(piece.box.size());
    Vec u(dims);
    for (std::size_t flat = begin; flat < end; ++flat) {
      double w;
      grid.decode(flat, u, w);
      try {
        const SpherePoint p = piece.chart(u);
        const double value = g(p);
        raw[flat] = value;
        weighted[flat] = value * piece.volume_element(u) * w;
      } catch (const std::exception& err) {
        throw std::runtime_error(std::string(err.what()) +
                                 " [at quadrature node u = " +
                                 format_params(u) + "]");
      }
    }
  });

  for (std::size_t i = 0; i < grid.total; ++i) {
    sum.add(weighted[i]);
    min_val = std::min(min_val, raw[i]);
    max_val = std::max(max_val, raw[i]);
  }
  node_count += grid.total;
}

}  // namespace

double sphere_volume(SphereDim dim) {
  double factorial = 1.0;
  for (int i = 2; i <= dim.k(); ++i) factorial *= i;
  return 2.0 * std::pow(std::numbers::pi, dim.k() + 1) / factorial;
}

IntegralResult integrate(const Domain& dom, const QuadratureSpec& q,
                         const Integrand& g) {
  if (dom.mc_sphere) return monte_carlo_sphere(dom.dim, q, g);
  if (dom.pieces.empty()) {
    throw std::invalid_argument("integrate: domain '" + dom.label +
                                "' has no charts");
  }
  StableSum sum;
  double min_val = std::numeric_limits<double>::infinity();
  double max_val = -std::numeric_limits<double>::infinity();
  std::size_t nodes = 0;
  for (const ChartPiece& piece : dom.pieces) {
    accumulate_piece(piece, q.nodes_per_axis, g, sum, min_val, max_val, nodes);
  }
  return IntegralResult{sum.value(), 0.0, min_val, max_val, nodes, false};
}

IntegralResult integrate_boundary(const BoundaryPatch& b,
                                  const QuadratureSpec& q,
                                  const BoundaryIntegrand& g) {
  const std::size_t dims = b.box.size();
  if (q.nodes_per_axis.size() < dims) {
    throw std::invalid_argument(
        "integrate_boundary: quadrature spec has too few axes");
  }
  ChartPiece as_piece{b.chart, b.box, b.periodic, b.area_element};
  const std::vector<int> nodes(q.nodes_per_axis.begin(),
                               q.nodes_per_axis.begin() + dims);
  StableSum sum;
  double min_val = std::numeric_limits<double>::infinity();
  double max_val = -std::numeric_limits<double>::infinity();
  const TensorGrid grid(as_piece, nodes);
  std::vector<double> weighted(grid.total);
  std::vector<double> raw(grid.total);
  parallel_for_chunks(grid.total, [&](std::size_t begin, std::size_t end) {
    Vec u(static_cast<int>(dims));
    for (std::size_t flat = begin; flat < end; ++flat) {
      double w;
      grid.decode(flat, u, w);
      try {
        const SpherePoint p = b.chart(u);
        const double value = g(p, b.conormal(u));
        raw[flat] = value;
        weighted[flat] = value * b.area_element(u) * w;
      } catch (const std::exception& err) {
        throw std::runtime_error(std::string(err.what()) +
                                 " [at boundary node u = " +
                                 format_params(u) + "]");
      }
    }
  });
  for (std::size_t i = 0; i < grid.total; ++i) {
    sum.add(weighted[i]);
    min_val = std::min(min_val, raw[i]);
    max_val = std::max(max_val, raw[i]);
  }
  return IntegralResult{sum.value(), 0.0, min_val, max_val, grid.total, false};
}

IntegralResult monte_carlo_sphere(SphereDim dim, const QuadratureSpec& q,
                                  const Integrand& g) {
  if (!q.mc_samples.has_value() || *q.mc_samples < 1) {
    throw std::invalid_argument(
        "monte_carlo_sphere: mc_samples must be set and positive");
  }
  const std::size_t n = static_cast<std::size_t>(*q.mc_samples);
  const int ambient = dim.ambient_dim();
  std::vector<double> raw(n);

  parallel_for_chunks(n, [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      Rng rng = Rng::at_index(q.rng_seed, i);
      const SpherePoint p(rng.sphere_point(ambient));
      try {
        raw[i] = g(p);
      } catch (const std::exception& err) {
        throw std::runtime_error(std::string(err.what()) +
                                 " [at Monte Carlo sample " +
                                 std::to_string(i) + "]");
      }
    }
  });

  StableSum mean_sum;
  double min_val = std::numeric_limits<double>::infinity();
  double max_val = -std::numeric_limits<double>::infinity();
  for (double v : raw) {
    mean_sum.add(v);
    min_val = std::min(min_val, v);
    max_val = std::max(max_val, v);
  }
  const double mean = mean_sum.value() / static_cast<double>(n);

  // Two-pass variance: immune to the catastrophic cancellation a
  // sum-of-squares formula hits on near-constant integrands.
  StableSum var_sum;
  for (double v : raw) {
    const double d = v - mean;
    var_sum.add(d * d);
  }
  const double variance = n > 1 ? var_sum.value() / static_cast<double>(n - 1)
                                : 0.0;
  const double vol = sphere_volume(dim);
  return IntegralResult{mean * vol,
                        vol * std::sqrt(variance / static_cast<double>(n)),
                        min_val, max_val, n, true};
}

DomainBundle solid_torus(double delta_max) {
  if (!(delta_max > 0.0 && delta_max < 1.0)) {
    throw std::invalid_argument("solid_torus: delta_max must be in (0, 1)");
  }
  const double dm = delta_max;
  const double rim = std::sqrt(1.0 - dm * dm);

  ChartPiece piece;
  piece.chart = [](const Vec& u) {
    const double th = u[0], al = u[1], de = u[2];
    const double r = std::sqrt(1.0 - de * de);
    Vec x(4);
    x << de * std::cos(th), de * std::sin(th), r * std::cos(al),
        r * std::sin(al);
    return SpherePoint(std::move(x));
  };
  piece.box = {{0.0, kTwoPi}, {0.0, kTwoPi}, {0.0, dm}};
  piece.periodic = {true, true, false};
  piece.volume_element = [](const Vec& u) { return u[2]; };

  std::ostringstream label;
  label << "solid_torus:" << dm;

  Domain dom{label.str(), SphereDim(1), {piece}, false};

  BoundaryPatch boundary;
  boundary.label = label.str() + "/boundary";
  boundary.chart = [dm, rim](const Vec& u) {
    Vec x(4);
    x << dm * std::cos(u[0]), dm * std::sin(u[0]), rim * std::cos(u[1]),
        rim * std::sin(u[1]);
    return SpherePoint(std::move(x));
  };
  boundary.box = {{0.0, kTwoPi}, {0.0, kTwoPi}};
  boundary.periodic = {true, true};
  boundary.area_element = [dm, rim](const Vec&) { return dm * rim; };
  boundary.conormal = [dm, rim](const Vec& u) {
    // normalized d(chart)/d(delta), outward (delta increases out of K)
    Vec c(4);
    c << rim * std::cos(u[0]), rim * std::sin(u[0]), -dm * std::cos(u[1]),
        -dm * std::sin(u[1]);
    Vec x(4);
    x << dm * std::cos(u[0]), dm * std::sin(u[0]), rim * std::cos(u[1]),
        rim * std::sin(u[1]);
    return TangentVector(SpherePoint(std::move(x)), std::move(c));
  };

  return DomainBundle{std::move(dom), std::move(boundary)};
}

DomainBundle complement_torus(double delta_max) {
  if (!(delta_max > 0.0 && delta_max < 1.0)) {
    throw std::invalid_argument(
        "complement_torus: delta_max must be in (0, 1)");
  }
  const double dm = delta_max;                    // delta_max of K
  const double dc = std::sqrt(1.0 - dm * dm);     // delta range of K^c

  ChartPiece piece;
  piece.chart = [](const Vec& u) {
    const double th = u[0], al = u[1], de = u[2];
    const double r = std::sqrt(1.0 - de * de);
    Vec x(4);
    x << r * std::cos(th), r * std::sin(th), de * std::cos(al),
        de * std::sin(al);
    return SpherePoint(std::move(x));
  };
  piece.box = {{0.0, kTwoPi}, {0.0, kTwoPi}, {0.0, dc}};
  piece.periodic = {true, true, false};
  piece.volume_element = [](const Vec& u) { return u[2]; };

  std::ostringstream label;
  label << "complement:" << dm;

  Domain dom{label.str(), SphereDim(1), {piece}, false};

  BoundaryPatch boundary;
  boundary.label = label.str() + "/boundary";
  boundary.chart = [dm, dc](const Vec& u) {
    Vec x(4);
    x << dm * std::cos(u[0]), dm * std::sin(u[0]), dc * std::cos(u[1]),
        dc * std::sin(u[1]);
    return SpherePoint(std::move(x));
  };
  boundary.box = {{0.0, kTwoPi}, {0.0, kTwoPi}};
  boundary.periodic = {true, true};
  boundary.area_element = [dm, dc](const Vec&) { return dm * dc; };
  boundary.conormal = [dm, dc](const Vec& u) {
    // outward from K^c: opposite to the solid torus conormal
    Vec c(4);
    c << -dc * std::cos(u[0]), -dc * std::sin(u[0]), dm * std::cos(u[1]),
        dm * std::sin(u[1]);
    Vec x(4);
    x << dm * std::cos(u[0]), dm * std::sin(u[0]), dc * std::cos(u[1]),
        dc * std::sin(u[1]);
    return TangentVector(SpherePoint(std::move(x)), std::move(c));
  };

  return DomainBundle{std::move(dom), std::move(boundary)};
}

DomainBundle sphere_domain(SphereDim dim) {
  if (dim.k() == 1) {
    const double half = 0.7071067811865476;
    DomainBundle inner = solid_torus(half);
    DomainBundle outer = complement_torus(half);
    Domain dom{"sphere", dim,
               {inner.domain.pieces[0], outer.domain.pieces[0]}, false};
    return DomainBundle{std::move(dom), std::nullopt};
  }
  Domain dom{"sphere", dim, {}, true};
  return DomainBundle{std::move(dom), std::nullopt};
}

namespace {

// Central-difference partial derivatives of a chart, for the first
// fundamental form of user-supplied domains.
Mat chart_jacobian(const std::function<SpherePoint(const Vec&)>& chart,
                   const Vec& u, int ambient) {
  const int dims = static_cast<int>(u.size());
  const double h = 1e-6;
  Mat j(ambient, dims);
  Vec up = u, um = u;
  for (int a = 0; a < dims; ++a) {
    up[a] = u[a] + h;
    um[a] = u[a] - h;
    j.col(a) = (chart(up).coords() - chart(um).coords()) / (2.0 * h);
    up[a] = u[a];
    um[a] = u[a];
  }
  return j;
}

double numeric_volume_element(
    const std::function<SpherePoint(const Vec&)>& chart, const Vec& u,
    int ambient) {
  const Mat j = chart_jacobian(chart, u, ambient);
  const Mat g = j.transpose() * j;
  const double det = g.determinant();
  return det > 0.0 ? std::sqrt(det) : 0.0;
}

std::vector<double> parse_number_list(const std::string& text,
                                      const std::string& key) {
  std::vector<double> out;
  std::string token;
  std::istringstream in(text);
  while (std::getline(in, token, ',')) {
    try {
      out.push_back(std::stod(token));
    } catch (const std::exception&) {
      throw std::invalid_argument("custom domain: bad number '" + token +
                                  "' in key '" + key + "'");
    }
  }
  return out;
}

}  // namespace

DomainBundle custom_domain_from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::invalid_argument("cannot open domain file '" + path + "'");
  }
  std::map<std::string, std::string> kv;
  std::string line;
  while (std::getline(in, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    const auto eq = line.find('=');
    if (eq == std::string::npos) continue;
    auto trim = [](std::string s) {
      const auto first = s.find_first_not_of(" \t\r\n");
      if (first == std::string::npos) return std::string();
      const auto last = s.find_last_not_of(" \t\r\n");
      return s.substr(first, last - first + 1);
    };
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) continue;
    if (!kv.emplace(key, value).second) {
      throw std::invalid_argument("custom domain: duplicate key '" + key + "'");
    }
  }

  auto require = [&](const std::string& key) -> const std::string& {
    const auto it = kv.find(key);
    if (it == kv.end()) {
      throw std::invalid_argument("custom domain: missing key '" + key + "'");
    }
    return it->second;
  };

  const SphereDim dim(std::stoi(require("k")));
  const int ambient = dim.ambient_dim();
  const int dims = dim.sphere_dim();

  std::vector<std::string> uvars;
  for (int a = 0; a < dims; ++a) uvars.push_back("u" + std::to_string(a + 1));

  std::vector<Expression> component_exprs;
  for (int i = 0; i < ambient; ++i) {
    component_exprs.push_back(
        Expression::parse(require("x" + std::to_string(i + 1)), uvars));
  }

  // box = lo:hi, lo:hi, ...
  std::vector<std::pair<double, double>> box;
  {
    std::istringstream boxes(require("box"));
    std::string token;
    while (std::getline(boxes, token, ',')) {
      const auto colon = token.find(':');
      if (colon == std::string::npos) {
        throw std::invalid_argument(
            "custom domain: box entries must be lo:hi, got '" + token + "'");
      }
      box.emplace_back(std::stod(token.substr(0, colon)),
                       std::stod(token.substr(colon + 1)));
    }
  }
  if (static_cast<int>(box.size()) != dims) {
    throw std::invalid_argument("custom domain: box must have 2k+1 intervals");
  }

  const std::vector<double> periodic_flags =
      parse_number_list(require("periodic"), "periodic");
  if (static_cast<int>(periodic_flags.size()) != dims) {
    throw std::invalid_argument("custom domain: periodic must have 2k+1 flags");
  }
  std::vector<bool> periodic;
  for (double flag : periodic_flags) periodic.push_back(flag != 0.0);

  auto chart = [component_exprs, ambient](const Vec& u) {
    Vec x(ambient);
    std::span<const double> vals(u.data(), static_cast<std::size_t>(u.size()));
    for (int i = 0; i < ambient; ++i) x[i] = component_exprs[i].evaluate(vals);
    return SpherePoint(std::move(x));  // validates |x| = 1
  };

  std::function<double(const Vec&)> volume_element;
  const auto ve_it = kv.find("volume_element");
  if (ve_it != kv.end()) {
    const Expression ve = Expression::parse(ve_it->second, uvars);
    volume_element = [ve](const Vec& u) {
      return ve.evaluate(
          std::span<const double>(u.data(), static_cast<std::size_t>(u.size())));
    };
  } else {
    volume_element = [chart, ambient](const Vec& u) {
      return numeric_volume_element(chart, u, ambient);
    };
  }

  // Validation: on-sphere is enforced by the chart itself; cross-check the
  // volume element against sqrt(det G) at random interior parameters.
  {
    Rng rng(0xd07a15);
    for (int trial = 0; trial < 32; ++trial) {
      Vec u(dims);
      for (int a = 0; a < dims; ++a) {
        const auto [lo, hi] = box[a];
        u[a] = lo + (0.05 + 0.9 * rng.uniform()) * (hi - lo);
      }
      const double claimed = volume_element(u);
      const double numeric = numeric_volume_element(chart, u, ambient);
      if (std::abs(claimed - numeric) > 1e-8 * std::max(1.0, numeric)) {
        std::ostringstream msg;
        msg << "custom domain '" << path
            << "': volume_element disagrees with sqrt(det G) at u = "
            << format_params(u) << " (" << claimed << " vs " << numeric << ")";
        throw std::invalid_argument(msg.str());
      }
    }
  }

  Domain dom{"custom:" + path, dim, {ChartPiece{chart, box, periodic,
                                                volume_element}}, false};

  std::optional<BoundaryPatch> boundary;
  const auto ba_it = kv.find("boundary_axis");
  if (ba_it != kv.end()) {
    const int axis = std::stoi(ba_it->second) - 1;
    if (axis < 0 || axis >= dims) {
      throw std::invalid_argument("custom domain: boundary_axis out of range");
    }
    if (periodic[axis]) {
      throw std::invalid_argument(
          "custom domain: boundary_axis must be non-periodic");
    }
    const double hi = box[axis].second;

    auto embed = [axis, dims, hi](const Vec& s) {
      Vec u(dims);
      int b = 0;
      for (int a = 0; a < dims; ++a) u[a] = (a == axis) ? hi : s[b++];
      return u;
    };

    BoundaryPatch patch;
    patch.label = dom.label + "/boundary";
    patch.chart = [chart, embed](const Vec& s) { return chart(embed(s)); };
    for (int a = 0; a < dims; ++a) {
      if (a == axis) continue;
      patch.box.push_back(box[a]);
      patch.periodic.push_back(periodic[a]);
    }
    patch.area_element = [chart, embed, ambient, axis](const Vec& s) {
      const Vec u = embed(s);
      const Mat j = chart_jacobian(chart, u, ambient);
      Mat jb(ambient, j.cols() - 1);
      int b = 0;
      for (int a = 0; a < j.cols(); ++a) {
        if (a == axis) continue;
        jb.col(b++) = j.col(a);
      }
      const double det = (jb.transpose() * jb).determinant();
      return det > 0.0 ? std::sqrt(det) : 0.0;
    };
    patch.conormal = [chart, embed, ambient, axis](const Vec& s) {
      const Vec u = embed(s);
      const SpherePoint p = chart(u);
      const Mat j = chart_jacobian(chart, u, ambient);
      // Orthonormalize the boundary tangents, then strip them (and the
      // sphere normal) from the outward parameter direction.
      std::vector<Vec> tangents;
      for (int a = 0; a < j.cols(); ++a) {
        if (a == axis) continue;
        Vec w = j.col(a);
        w -= w.dot(p.coords()) * p.coords();
        for (const Vec& t : tangents) w -= w.dot(t) * t;
        const double norm = w.norm();
        if (norm > 1e-10) tangents.push_back(w / norm);
      }
      Vec c = j.col(axis);
      for (int pass = 0; pass < 2; ++pass) {
        c -= c.dot(p.coords()) * p.coords();
        for (const Vec& t : tangents) c -= c.dot(t) * t;
      }
      const double norm = c.norm();
      if (norm < 1e-10) {
        throw std::runtime_error(
            "custom domain: boundary conormal degenerates at u = " +
            format_params(u));
      }
      return TangentVector(p, c / norm);
    };
    boundary = std::move(patch);
  }

  return DomainBundle{std::move(dom), std::move(boundary)};
}

}  // namespace svf
