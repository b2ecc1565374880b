#include "inflap/solver.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>

namespace inflap {

BoundaryData BoundaryData::from_function(
    const std::function<double(const std::array<double, 2>&)>& g,
    const RegionLabels& regions) {
  BoundaryData bd;
  bd.values_.reserve(regions.band_nodes().size());
  bd.min_ = std::numeric_limits<double>::infinity();
  bd.max_ = -std::numeric_limits<double>::infinity();
  const auto& dom = regions.domain();
  for (const std::int64_t node : regions.band_nodes()) {
    const double v = g(dom.coord(node));
    if (!std::isfinite(v)) {
      throw BadValue("BoundaryData: non-finite value on a band node");
    }
    bd.values_.push_back(v);
    bd.min_ = std::min(bd.min_, v);
    bd.max_ = std::max(bd.max_, v);
  }
  return bd;
}

BoundaryData BoundaryData::from_analytic(const AnalyticSolution& sol,
                                         const RegionLabels& regions) {
  const int dim = regions.domain().dim();
  return from_function(
      [&sol, dim](const std::array<double, 2>& x) { return sol(x, dim); },
      regions);
}

BoundaryData BoundaryData::from_field(const ScalarField& f,
                                      const RegionLabels& regions) {
  if (!(f.domain() == regions.domain())) {
    throw BadValue("BoundaryData::from_field: domain mismatch");
  }
  BoundaryData bd;
  bd.values_.reserve(regions.band_nodes().size());
  bd.min_ = std::numeric_limits<double>::infinity();
  bd.max_ = -std::numeric_limits<double>::infinity();
  for (const std::int64_t node : regions.band_nodes()) {
    const double v = f[node];
    if (!std::isfinite(v)) {
      throw BadValue("BoundaryData: non-finite value on a band node");
    }
    bd.values_.push_back(v);
    bd.min_ = std::min(bd.min_, v);
    bd.max_ = std::max(bd.max_, v);
  }
  return bd;
}

void BoundaryData::impose(ScalarField& f, const RegionLabels& regions) const {
  if (!(f.domain() == regions.domain())) {
    throw BadValue("BoundaryData::impose: domain mismatch");
  }
  const auto band = regions.band_nodes();
  for (std::size_t k = 0; k < band.size(); ++k) {
    f[band[k]] = values_[k];
  }
}

const char* to_string(Scheme s) {
  return s == Scheme::jacobi ? "jacobi" : "gauss_seidel";
}

const char* to_string(InitKind k) {
  switch (k) {
    case InitKind::band_min_constant:
      return "band_min_constant";
    case InitKind::band_max_constant:
      return "band_max_constant";
    case InitKind::custom:
      return "custom";
  }
  return "?";
}

namespace {

// Shared sweep body. `src` and `dst` may alias (Gauss-Seidel) or not
// (Jacobi, dst pre-filled with the band values).
double sweep_into(const ScalarField& src, ScalarField& dst,
                  const RegionLabels& regions,
                  const std::vector<std::int64_t>& deltas) {
  const auto vals = src.values();
  double update = 0.0;
  for (const std::int64_t node : regions.inner_nodes()) {
    double mx = vals[static_cast<size_t>(node + deltas[0])];
    double mn = mx;
    for (std::size_t k = 1; k < deltas.size(); ++k) {
      const double v = vals[static_cast<size_t>(node + deltas[k])];
      if (v > mx) mx = v;
      if (v < mn) mn = v;
    }
    const double next = 0.5 * (mx + mn);
    update = std::max(update, std::abs(next - src[node]));
    dst[node] = next;
  }
  return update;
}

double gauss_seidel_sweep(ScalarField& u, const RegionLabels& regions,
                          const std::vector<std::int64_t>& deltas) {
  auto vals = u.values();
  double update = 0.0;
  for (const std::int64_t node : regions.inner_nodes()) {
    double mx = vals[static_cast<size_t>(node + deltas[0])];
    double mn = mx;
    for (std::size_t k = 1; k < deltas.size(); ++k) {
      const double v = vals[static_cast<size_t>(node + deltas[k])];
      if (v > mx) mx = v;
      if (v < mn) mn = v;
    }
    const double next = 0.5 * (mx + mn);
    update = std::max(update, std::abs(next - vals[static_cast<size_t>(node)]));
    vals[static_cast<size_t>(node)] = next;
  }
  return update;
}

}  // namespace

std::pair<ScalarField, double> midpoint_sweep(const ScalarField& u,
                                              const Stencil& st,
                                              const RegionLabels& regions,
                                              Scheme scheme) {
  if (!(u.domain() == regions.domain())) {
    throw BadValue("midpoint_sweep: field and regions disagree on the domain");
  }
  const auto deltas = linear_deltas(st, u.domain());
  ScalarField next = u;
  double update = 0.0;
  if (scheme == Scheme::jacobi) {
    update = sweep_into(u, next, regions, deltas);
  } else {
    update = gauss_seidel_sweep(next, regions, deltas);
  }
  return {std::move(next), update};
}

std::pair<ScalarField, SolveReport> solve(const LatticeDomain& dom,
                                          const Stencil& st,
                                          const RegionLabels& regions,
                                          const BoundaryData& g,
                                          const SolveConfig& cfg) {
  if (!(cfg.tol > 0.0)) {
    throw BadValue("solve: tol must be positive");
  }
  if (cfg.max_iter < 1) {
    throw BadValue("solve: max_iter must be at least 1");
  }
  const auto t0 = std::chrono::steady_clock::now();

  ScalarField u(dom);
  switch (cfg.init) {
    case InitKind::band_min_constant:
      std::fill(u.values().begin(), u.values().end(), g.min());
      break;
    case InitKind::band_max_constant:
      std::fill(u.values().begin(), u.values().end(), g.max());
      break;
    case InitKind::custom:
      if (!cfg.init_field) {
        throw BadValue("solve: init == custom requires init_field");
      }
      u = *cfg.init_field;
      if (!(u.domain() == dom)) {
        throw BadValue("solve: init_field lives on a different domain");
      }
      break;
  }
  g.impose(u, regions);

  const auto deltas = linear_deltas(st, dom);
  SolveReport report;
  ScalarField scratch = u;

  double update = std::numeric_limits<double>::infinity();
  std::int64_t it = 0;
  while (it < cfg.max_iter) {
    ++it;
    if (cfg.scheme == Scheme::jacobi) {
      update = sweep_into(u, scratch, regions, deltas);
      std::swap(u, scratch);
    } else {
      update = gauss_seidel_sweep(u, regions, deltas);
    }
    if (update <= cfg.tol) break;
  }

  report.iterations = it;
  report.final_update = update;
  report.converged = update <= cfg.tol;
  const ScalarField res = residual(u, st, regions);
  report.residual_sup = sup_abs(res, regions.inner_nodes());
  report.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  return {std::move(u), report};
}

std::pair<ScalarField, ScalarField> lower_upper_bracket(
    const LatticeDomain& dom, const RegionLabels& regions,
    const BoundaryData& g) {
  (void)regions;
  return {ScalarField(dom, g.min()), ScalarField(dom, g.max())};
}

}  // namespace inflap
