#include "inflap/coneops.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace inflap {

namespace {

void require_same_domain(const ScalarField& u, const RegionLabels& rg,
                         const char* what) {
  if (!(u.domain() == rg.domain())) {
    throw BadValue(std::string(what) + ": field and regions disagree on the domain");
  }
}

std::string node_label(const LatticeDomain& dom, std::int64_t node) {
  const auto m = dom.multi_index(node);
  std::ostringstream os;
  if (dom.dim() == 1) {
    os << "node " << m[0];
  } else {
    os << "node (" << m[0] << "," << m[1] << ")";
  }
  const auto x = dom.coord(node);
  os << " at x=(" << x[0];
  if (dom.dim() > 1) os << "," << x[1];
  os << ")";
  return os.str();
}

}  // namespace

ScalarField ball_max(const ScalarField& u, const Stencil& st,
                     const RegionLabels& regions,
                     std::vector<std::int32_t>* argmax) {
  require_same_domain(u, regions, "ball_max");
  ScalarField out = u;  // band passes through
  if (argmax) argmax->assign(static_cast<size_t>(u.size()), -1);
  const auto deltas = linear_deltas(st, u.domain());
  const auto vals = u.values();
  for (const std::int64_t node : regions.inner_nodes()) {
    double best = vals[static_cast<size_t>(node + deltas[0])];
    std::int32_t best_k = 0;
    for (std::size_t k = 1; k < deltas.size(); ++k) {
      const double v = vals[static_cast<size_t>(node + deltas[k])];
      if (v > best) {
        best = v;
        best_k = static_cast<std::int32_t>(k);
      }
    }
    out[node] = best;
    if (argmax) (*argmax)[static_cast<size_t>(node)] = best_k;
  }
  return out;
}

ScalarField ball_min(const ScalarField& u, const Stencil& st,
                     const RegionLabels& regions,
                     std::vector<std::int32_t>* argmin) {
  require_same_domain(u, regions, "ball_min");
  ScalarField out = u;
  if (argmin) argmin->assign(static_cast<size_t>(u.size()), -1);
  const auto deltas = linear_deltas(st, u.domain());
  const auto vals = u.values();
  for (const std::int64_t node : regions.inner_nodes()) {
    double best = vals[static_cast<size_t>(node + deltas[0])];
    std::int32_t best_k = 0;
    for (std::size_t k = 1; k < deltas.size(); ++k) {
      const double v = vals[static_cast<size_t>(node + deltas[k])];
      if (v < best) {
        best = v;
        best_k = static_cast<std::int32_t>(k);
      }
    }
    out[node] = best;
    if (argmin) (*argmin)[static_cast<size_t>(node)] = best_k;
  }
  return out;
}

namespace {

struct BallExtrema {
  double max;
  double min;
};

BallExtrema ball_extrema_at(const ScalarField& u, const Stencil& st,
                            std::int64_t node) {
  const auto deltas = linear_deltas(st, u.domain());
  const auto vals = u.values();
  double mx = vals[static_cast<size_t>(node + deltas[0])];
  double mn = mx;
  for (std::size_t k = 1; k < deltas.size(); ++k) {
    const double v = vals[static_cast<size_t>(node + deltas[k])];
    if (v > mx) mx = v;
    if (v < mn) mn = v;
  }
  return {mx, mn};
}

void require_inner(const RegionLabels& rg, std::int64_t node, const char* what) {
  if (node < 0 || node >= rg.domain().node_count() || !rg.is_inner(node)) {
    throw OutsideInnerRegion(std::string(what) + ": " +
                             node_label(rg.domain(), std::max<std::int64_t>(node, 0)) +
                             " is not in the inner region");
  }
}

}  // namespace

double s_plus(const ScalarField& u, const Stencil& st,
              const RegionLabels& regions, std::int64_t node) {
  require_same_domain(u, regions, "s_plus");
  require_inner(regions, node, "s_plus");
  const auto e = ball_extrema_at(u, st, node);
  return (e.max - u[node]) / st.radius();
}

double s_minus(const ScalarField& u, const Stencil& st,
               const RegionLabels& regions, std::int64_t node) {
  require_same_domain(u, regions, "s_minus");
  require_inner(regions, node, "s_minus");
  const auto e = ball_extrema_at(u, st, node);
  return (u[node] - e.min) / st.radius();
}

ScalarField residual(const ScalarField& u, const Stencil& st,
                     const RegionLabels& regions) {
  require_same_domain(u, regions, "residual");
  ScalarField out(u.domain(), 0.0);
  const auto deltas = linear_deltas(st, u.domain());
  const auto vals = u.values();
  const double eps = st.radius();
  for (const std::int64_t node : regions.inner_nodes()) {
    double mx = vals[static_cast<size_t>(node + deltas[0])];
    double mn = mx;
    for (std::size_t k = 1; k < deltas.size(); ++k) {
      const double v = vals[static_cast<size_t>(node + deltas[k])];
      if (v > mx) mx = v;
      if (v < mn) mn = v;
    }
    const double up = (mx - vals[static_cast<size_t>(node)]) / eps;
    const double down = (vals[static_cast<size_t>(node)] - mn) / eps;
    out[node] = down - up;
  }
  return out;
}

double sup_abs(const ScalarField& f, std::span<const std::int64_t> nodes) {
  double s = 0.0;
  for (const std::int64_t n : nodes) {
    s = std::max(s, std::abs(f[n]));
  }
  return s;
}

double cone_value(const ConeParams& c, const std::array<double, 2>& x, int dim) {
  const std::array<double, 2> d{x[0] - c.vertex[0],
                                dim > 1 ? x[1] - c.vertex[1] : 0.0};
  return c.a + c.b * vector_norm(c.norm, d, dim);
}

ScalarField cone_eval(const ConeParams& c, const LatticeDomain& dom) {
  if (!std::isfinite(c.a) || !std::isfinite(c.b) || !std::isfinite(c.vertex[0]) ||
      !std::isfinite(c.vertex[1])) {
    throw BadValue("cone_eval: non-finite cone parameters");
  }
  ScalarField f(dom);
  for (std::int64_t n = 0; n < dom.node_count(); ++n) {
    f[n] = cone_value(c, dom.coord(n), dom.dim());
  }
  return f;
}

AnalyticSolution AnalyticSolution::linear(const std::array<double, 2>& slope,
                                          double c) {
  AnalyticSolution s(Kind::linear, "linear");
  s.p_ = slope;
  s.c_ = c;
  return s;
}

AnalyticSolution AnalyticSolution::cone(const ConeParams& params) {
  AnalyticSolution s(Kind::cone, "cone");
  s.cone_ = params;
  return s;
}

AnalyticSolution AnalyticSolution::aronsson() {
  return AnalyticSolution(Kind::aronsson, "aronsson");
}

double AnalyticSolution::operator()(const std::array<double, 2>& x,
                                    int dim) const {
  switch (kind_) {
    case Kind::linear: {
      double v = c_ + p_[0] * x[0];
      if (dim > 1) v += p_[1] * x[1];
      return v;
    }
    case Kind::cone:
      return cone_value(cone_, x, dim);
    case Kind::aronsson:
      if (dim != 2) {
        throw DimensionMismatch("aronsson sample requires a 2D domain");
      }
      return std::pow(std::abs(x[0]), 4.0 / 3.0) -
             std::pow(std::abs(x[1]), 4.0 / 3.0);
  }
  return 0.0;
}

ScalarField analytic_eval(const AnalyticSolution& sol, const LatticeDomain& dom) {
  ScalarField f(dom);
  for (std::int64_t n = 0; n < dom.node_count(); ++n) {
    f[n] = sol(dom.coord(n), dom.dim());
  }
  return f;
}

namespace {

// Largest |u(x) - u(y)| / h over axis-adjacent node pairs.
double max_neighbor_slope(const ScalarField& u) {
  const auto& dom = u.domain();
  const std::int64_t n0 = dom.extent(0);
  const std::int64_t n1 = dom.dim() > 1 ? dom.extent(1) : 1;
  double worst = 0.0;
  for (std::int64_t i = 0; i < n0; ++i) {
    for (std::int64_t j = 0; j < n1; ++j) {
      const std::int64_t node = dom.linear_index(i, j);
      if (i + 1 < n0) {
        worst = std::max(worst, std::abs(u[dom.linear_index(i + 1, j)] - u[node]));
      }
      if (j + 1 < n1) {
        worst = std::max(worst, std::abs(u[dom.linear_index(i, j + 1)] - u[node]));
      }
    }
  }
  return worst / dom.spacing();
}

struct BoxNodes {
  std::vector<std::int64_t> shell;
  std::vector<std::int64_t> interior;
};

BoxNodes collect_box_nodes(const LatticeDomain& dom, const IndexBox& box) {
  BoxNodes out;
  const bool two_d = dom.dim() > 1;
  for (std::int64_t i = box.lo[0]; i <= box.hi[0]; ++i) {
    const bool i_edge = (i == box.lo[0] || i == box.hi[0]);
    const std::int64_t j_lo = two_d ? box.lo[1] : 0;
    const std::int64_t j_hi = two_d ? box.hi[1] : 0;
    for (std::int64_t j = j_lo; j <= j_hi; ++j) {
      const bool j_edge = two_d && (j == box.lo[1] || j == box.hi[1]);
      const std::int64_t node = dom.linear_index(i, j);
      if (i_edge || j_edge) {
        out.shell.push_back(node);
      } else {
        out.interior.push_back(node);
      }
    }
  }
  return out;
}

void require_box_admissible(const LatticeDomain& dom, const IndexBox& box) {
  for (int k = 0; k < dom.dim(); ++k) {
    const auto a = static_cast<size_t>(k);
    if (box.lo[a] < 0 || box.hi[a] >= dom.extent(k) || box.hi[a] - box.lo[a] < 2) {
      std::ostringstream os;
      os << "cone_comparison_check: subdomain box [" << box.lo[a] << ","
         << box.hi[a] << "] on axis " << k
         << " must lie inside the node set with a nonempty interior";
      throw BadValue(os.str());
    }
  }
}

bool vertex_strictly_inside(const LatticeDomain& dom, const IndexBox& box,
                            const std::array<double, 2>& v) {
  for (int k = 0; k < dom.dim(); ++k) {
    const auto a = static_cast<size_t>(k);
    const double lo = dom.bounds().lo[a] + static_cast<double>(box.lo[a]) * dom.spacing();
    const double hi = dom.bounds().lo[a] + static_cast<double>(box.hi[a]) * dom.spacing();
    if (!(v[a] > lo && v[a] < hi)) return false;
  }
  return true;
}

}  // namespace

ConeCheckConfig default_cone_family(const ScalarField& u, ConeDirection dir,
                                    Norm norm) {
  const auto& dom = u.domain();
  const double h = dom.spacing();
  const double slope_bound = max_neighbor_slope(u);

  ConeCheckConfig cfg;
  cfg.direction = dir;
  cfg.norm = norm;
  cfg.tol = 2.0 * h * slope_bound;

  if (slope_bound > 0.0) {
    for (int i = 0; i < 33; ++i) {
      cfg.slopes.push_back(-slope_bound + static_cast<double>(i) * slope_bound / 16.0);
    }
  } else {
    cfg.slopes.push_back(0.0);
  }

  const int vertex_span = 8;  // candidates within 8h of the box
  const double radius = static_cast<double>(vertex_span) * h;
  const bool two_d = dom.dim() > 1;
  for (const std::int64_t side : {4, 8}) {
    if (side >= dom.extent(0) || (two_d && side >= dom.extent(1))) continue;
    for (std::int64_t i = 0; i + side < dom.extent(0); ++i) {
      const std::int64_t j_count = two_d ? dom.extent(1) - side : 1;
      for (std::int64_t j = 0; j < j_count; ++j) {
        ConeFamilyEntry entry;
        entry.box = IndexBox{{i, j}, {i + side, two_d ? j + side : 0}};
        // Vertex candidates on the extended lattice (indices may leave the
        // grid) within `radius` of the box, excluding its open interior.
        for (std::int64_t qi = i - vertex_span; qi <= i + side + vertex_span; ++qi) {
          const std::int64_t qj_lo = two_d ? j - vertex_span : 0;
          const std::int64_t qj_hi = two_d ? j + side + vertex_span : 0;
          for (std::int64_t qj = qj_lo; qj <= qj_hi; ++qj) {
            const bool inside_open =
                qi > i && qi < i + side && (!two_d || (qj > j && qj < j + side));
            if (inside_open) continue;
            const std::array<double, 2> gap{
                static_cast<double>(qi < i ? i - qi : (qi > i + side ? qi - i - side : 0)) * h,
                static_cast<double>(two_d ? (qj < j ? j - qj
                                                    : (qj > j + side ? qj - j - side : 0))
                                          : 0) *
                    h};
            if (vector_norm(norm, gap, dom.dim()) > radius * (1.0 + 1e-12)) continue;
            entry.vertices.push_back(
                {dom.bounds().lo[0] + static_cast<double>(qi) * h,
                 two_d ? dom.bounds().lo[1] + static_cast<double>(qj) * h : 0.0});
          }
        }
        cfg.entries.push_back(std::move(entry));
      }
    }
  }
  return cfg;
}

CheckResult cone_comparison_check(const ScalarField& u,
                                  const ConeCheckConfig& cfg) {
  const auto& dom = u.domain();
  const double sign = cfg.direction == ConeDirection::above ? 1.0 : -1.0;

  double worst = -std::numeric_limits<double>::infinity();
  CheckWitness witness;

  std::vector<double> w_shell, w_int, d_shell, d_int;
  for (const auto& entry : cfg.entries) {
    require_box_admissible(dom, entry.box);
    const BoxNodes nodes = collect_box_nodes(dom, entry.box);

    w_shell.clear();
    w_int.clear();
    for (const std::int64_t n : nodes.shell) w_shell.push_back(sign * u[n]);
    for (const std::int64_t n : nodes.interior) w_int.push_back(sign * u[n]);

    for (const auto& vertex : entry.vertices) {
      if (vertex_strictly_inside(dom, entry.box, vertex)) {
        std::ostringstream os;
        os << "cone_comparison_check: vertex (" << vertex[0] << "," << vertex[1]
           << ") lies inside its subdomain";
        throw BadFamily(os.str());
      }
      d_shell.clear();
      d_int.clear();
      for (const std::int64_t n : nodes.shell) {
        const auto x = dom.coord(n);
        d_shell.push_back(vector_norm(
            cfg.norm, {x[0] - vertex[0], x[1] - vertex[1]}, dom.dim()));
      }
      for (const std::int64_t n : nodes.interior) {
        const auto x = dom.coord(n);
        d_int.push_back(vector_norm(
            cfg.norm, {x[0] - vertex[0], x[1] - vertex[1]}, dom.dim()));
      }

      for (const double b : cfg.slopes) {
        double a = -std::numeric_limits<double>::infinity();
        for (std::size_t k = 0; k < w_shell.size(); ++k) {
          a = std::max(a, w_shell[k] - b * d_shell[k]);
        }
        for (std::size_t k = 0; k < w_int.size(); ++k) {
          const double excess = w_int[k] - (a + b * d_int[k]);
          if (excess > worst) {
            worst = excess;
            std::ostringstream os;
            os << "box=[" << entry.box.lo[0] << ".." << entry.box.hi[0] << "]";
            if (dom.dim() > 1) {
              os << "x[" << entry.box.lo[1] << ".." << entry.box.hi[1] << "]";
            }
            os << " vertex=(" << vertex[0];
            if (dom.dim() > 1) os << "," << vertex[1];
            os << ") b=" << b << " a=" << a << " "
               << node_label(dom, nodes.interior[k]);
            witness = CheckWitness{nodes.interior[k], os.str()};
          }
        }
      }
    }
  }
  if (!std::isfinite(worst)) {
    // Empty family checks nothing.
    worst = 0.0;
  }
  return make_check_result(worst, cfg.tol, std::move(witness));
}

CheckResult punctured_ball_check(const ScalarField& u,
                                 const std::vector<double>& radii, Norm norm,
                                 double tol,
                                 const std::vector<std::int64_t>& centers) {
  const auto& dom = u.domain();
  const double h = dom.spacing();

  double worst = -std::numeric_limits<double>::infinity();
  CheckWitness witness;

  for (const double r : radii) {
    if (!(r > 0.0) || std::abs(r / h - std::round(r / h)) > 1e-9) {
      throw BadRadii("punctured_ball_check: radius " + std::to_string(r) +
                     " is not a positive multiple of the spacing");
    }
    const Stencil st = make_stencil(h, r, norm, dom.dim());
    const auto deltas = linear_deltas(st, dom);
    const auto offsets = st.offsets();

    // Lattice sphere: offsets at distance exactly r (tie tolerance).
    std::vector<std::size_t> sphere;
    std::vector<double> dist(offsets.size());
    for (std::size_t k = 0; k < offsets.size(); ++k) {
      dist[k] = vector_norm(norm,
                            {static_cast<double>(offsets[k][0]) * h,
                             static_cast<double>(offsets[k][1]) * h},
                            dom.dim());
      if (std::abs(dist[k] - r) <= 1e-12 * r) sphere.push_back(k);
    }

    const std::int64_t n0 = dom.extent(0);
    const std::int64_t n1 = dom.dim() > 1 ? dom.extent(1) : 1;
    const std::array<int, 2> reach{st.reach(0), st.reach(1)};
    auto in_omega_r = [&](std::int64_t i, std::int64_t j) {
      if (i < reach[0] || i >= n0 - reach[0]) return false;
      if (dom.dim() > 1 && (j < reach[1] || j >= n1 - reach[1])) return false;
      return true;
    };

    auto run_center = [&](std::int64_t x0) {
      double sphere_max = -std::numeric_limits<double>::infinity();
      for (const std::size_t k : sphere) {
        sphere_max = std::max(sphere_max, u[x0 + deltas[k]]);
      }
      const double slope = (sphere_max - u[x0]) / r;
      for (std::size_t k = 0; k < offsets.size(); ++k) {
        if (offsets[k][0] == 0 && offsets[k][1] == 0) continue;
        const double bound = u[x0] + slope * dist[k];
        const double excess = u[x0 + deltas[k]] - bound;
        if (excess > worst) {
          worst = excess;
          std::ostringstream os;
          os << "r=" << r << " center " << node_label(dom, x0) << " offender "
             << node_label(dom, x0 + deltas[k]);
          witness = CheckWitness{x0 + deltas[k], os.str()};
        }
      }
    };

    if (centers.empty()) {
      for (std::int64_t i = reach[0]; i < n0 - reach[0]; ++i) {
        const std::int64_t j_lo = dom.dim() > 1 ? reach[1] : 0;
        const std::int64_t j_hi = dom.dim() > 1 ? n1 - reach[1] : 1;
        for (std::int64_t j = j_lo; j < j_hi; ++j) {
          run_center(dom.linear_index(i, j));
        }
      }
    } else {
      for (const std::int64_t node : centers) {
        const auto m = dom.multi_index(node);
        if (in_omega_r(m[0], m[1])) run_center(node);
      }
    }
  }
  if (!std::isfinite(worst)) worst = 0.0;
  return make_check_result(worst, tol, std::move(witness));
}

CheckResult epsilon_convexity_check(const ScalarField& u, std::int64_t node,
                                    const std::vector<double>& eps_list,
                                    Norm norm, double tol) {
  const auto& dom = u.domain();
  const double h = dom.spacing();
  if (eps_list.size() < 3) {
    throw BadRadii("epsilon_convexity_check: need at least 3 radii");
  }
  const double step = eps_list[1] - eps_list[0];
  if (!(step > 0.0)) {
    throw BadRadii("epsilon_convexity_check: radii must be increasing");
  }
  for (std::size_t k = 0; k + 1 < eps_list.size(); ++k) {
    if (std::abs((eps_list[k + 1] - eps_list[k]) - step) > 1e-9 * step) {
      throw BadRadii("epsilon_convexity_check: radii must be equally spaced");
    }
  }
  for (const double e : eps_list) {
    if (!(e > 0.0) || std::abs(e / h - std::round(e / h)) > 1e-9) {
      throw BadRadii("epsilon_convexity_check: radius " + std::to_string(e) +
                     " is not a positive multiple of the spacing");
    }
  }

  std::vector<double> envelope;
  envelope.reserve(eps_list.size());
  for (const double e : eps_list) {
    const Stencil st = make_stencil(h, e, norm, dom.dim());
    const auto m = dom.multi_index(node);
    if (m[0] < st.reach(0) || m[0] >= dom.extent(0) - st.reach(0) ||
        (dom.dim() > 1 &&
         (m[1] < st.reach(1) || m[1] >= dom.extent(1) - st.reach(1)))) {
      throw OutsideInnerRegion("epsilon_convexity_check: ball of radius " +
                               std::to_string(e) + " exits the domain at " +
                               node_label(dom, node));
    }
    const auto deltas = linear_deltas(st, dom);
    double mx = u[node + deltas[0]];
    for (std::size_t k = 1; k < deltas.size(); ++k) {
      mx = std::max(mx, u[node + deltas[k]]);
    }
    envelope.push_back(mx);
  }

  double worst = -std::numeric_limits<double>::infinity();
  CheckWitness witness;
  for (std::size_t k = 0; k + 2 < envelope.size(); ++k) {
    const double slack = envelope[k + 1] - 0.5 * (envelope[k] + envelope[k + 2]);
    if (slack > worst) {
      worst = slack;
      std::ostringstream os;
      os << node_label(dom, node) << " radii (" << eps_list[k] << ","
         << eps_list[k + 1] << "," << eps_list[k + 2] << ") envelopes ("
         << envelope[k] << "," << envelope[k + 1] << "," << envelope[k + 2]
         << ")";
      witness = CheckWitness{node, os.str()};
    }
  }
  return make_check_result(worst, tol, std::move(witness));
}

}  // namespace inflap
