// Microbenchmarks for the hot paths: envelope evaluation, residuals and
// solver sweeps at a few ball radii.

#include <benchmark/benchmark.h>

#include <cmath>
#include <random>

#include "inflap/coneops.hpp"
#include "inflap/solver.hpp"

namespace {

using namespace inflap;

struct Bench {
  LatticeDomain dom;
  Stencil st;
  RegionLabels regions;
  ScalarField u;
};

Bench make_bench(int cells, int radius_cells) {
  const double h = 1.0 / cells;
  const double eps = radius_cells * h;
  LatticeDomain dom = build_domain({{0.0, 0.0}, {1.0, 1.0}}, h, 2);
  Stencil st = make_stencil(h, eps, Norm::euclidean, 2);
  Stencil st2 = make_stencil(h, 2.0 * eps, Norm::euclidean, 2);
  RegionLabels regions = classify_regions(dom, st, st2);
  ScalarField u(dom);
  std::mt19937_64 rng(0);
  for (double& v : u.values()) {
    v = static_cast<double>(rng() >> 11) * 0x1.0p-53;
  }
  return Bench{std::move(dom), std::move(st), std::move(regions), std::move(u)};
}

void BM_BallMax(benchmark::State& state) {
  const Bench b = make_bench(128, static_cast<int>(state.range(0)));
  for (auto _ : state) {
    ScalarField up = ball_max(b.u, b.st, b.regions);
    benchmark::DoNotOptimize(up.values().data());
  }
  state.SetItemsProcessed(state.iterations() *
                          static_cast<std::int64_t>(b.regions.inner_nodes().size()) *
                          static_cast<std::int64_t>(b.st.size()));
}
BENCHMARK(BM_BallMax)->Arg(2)->Arg(4)->Arg(8);

void BM_Residual(benchmark::State& state) {
  const Bench b = make_bench(128, static_cast<int>(state.range(0)));
  for (auto _ : state) {
    ScalarField r = residual(b.u, b.st, b.regions);
    benchmark::DoNotOptimize(r.values().data());
  }
}
BENCHMARK(BM_Residual)->Arg(4)->Arg(8);

void BM_GaussSeidelSweep(benchmark::State& state) {
  Bench b = make_bench(128, static_cast<int>(state.range(0)));
  ScalarField u = b.u;
  for (auto _ : state) {
    auto [next, update] = midpoint_sweep(u, b.st, b.regions, Scheme::gauss_seidel);
    u = std::move(next);
    benchmark::DoNotOptimize(update);
  }
}
BENCHMARK(BM_GaussSeidelSweep)->Arg(4)->Arg(8);

void BM_JacobiSweep(benchmark::State& state) {
  Bench b = make_bench(128, static_cast<int>(state.range(0)));
  ScalarField u = b.u;
  for (auto _ : state) {
    auto [next, update] = midpoint_sweep(u, b.st, b.regions, Scheme::jacobi);
    u = std::move(next);
    benchmark::DoNotOptimize(update);
  }
}
BENCHMARK(BM_JacobiSweep)->Arg(4)->Arg(8);

void BM_SolveCone(benchmark::State& state) {
  const Bench b = make_bench(32, 4);
  const BoundaryData g = BoundaryData::from_analytic(
      AnalyticSolution::cone(ConeParams{0.0, 1.0, {3.0, 3.0}, Norm::euclidean}),
      b.regions);
  SolveConfig cfg;
  cfg.tol = 1e-10;
  for (auto _ : state) {
    auto [u, report] = solve(b.dom, b.st, b.regions, g, cfg);
    benchmark::DoNotOptimize(report.iterations);
  }
}
BENCHMARK(BM_SolveCone);

}  // namespace

BENCHMARK_MAIN();
