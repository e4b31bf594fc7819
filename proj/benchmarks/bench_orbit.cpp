// Throughput of orbit iteration: conic tables in two and three dimensions,
// polygon virtual dynamics, and the per-vertex invariant evaluation.
#include <benchmark/benchmark.h>

#include <billiards/caustics/tangency.hpp>
#include <billiards/polyref/polygons.hpp>
#include <billiards/reflect/boundary.hpp>
#include <billiards/reflect/orbit.hpp>

using namespace billiards;

static void BM_ellipse_orbit(benchmark::State& state) {
  const std::size_t steps = static_cast<std::size_t>(state.range(0));
  QuadricBoundary table({2.0, 1.0}, euclidean_frame());
  Eigen::VectorXd p1 = table.point_at(0.3), p2 = table.point_at(1.4);
  for (auto _ : state) {
    Orbit orbit = iterate_orbit(table, p1, p2, steps);
    benchmark::DoNotOptimize(orbit.vertices.size());
  }
  state.SetItemsProcessed(static_cast<int64_t>(state.iterations()) *
                          static_cast<int64_t>(steps));
}
BENCHMARK(BM_ellipse_orbit)->Arg(10)->Arg(100)->Arg(1000);

static void BM_ellipsoid_orbit(benchmark::State& state) {
  const std::size_t steps = static_cast<std::size_t>(state.range(0));
  QuadricBoundary table({3.0, 2.0, 1.0}, euclidean_frame());
  Eigen::VectorXd p1 = table.point_at(0.4, 0.3), p2 = table.point_at(1.0, 1.0);
  for (auto _ : state) {
    Orbit orbit = iterate_orbit(table, p1, p2, steps);
    benchmark::DoNotOptimize(orbit.vertices.size());
  }
  state.SetItemsProcessed(static_cast<int64_t>(state.iterations()) *
                          static_cast<int64_t>(steps));
}
BENCHMARK(BM_ellipsoid_orbit)->Arg(10)->Arg(100);

static void BM_joachimsthal(benchmark::State& state) {
  QuadricBoundary table({2.0, 1.0}, euclidean_frame());
  Eigen::Vector2d p(table.point_at(0.3)), v(-0.8, -0.4);
  for (auto _ : state) benchmark::DoNotOptimize(joachimsthal_invariant(p, v, 2.0, 1.0));
}
BENCHMARK(BM_joachimsthal);

static void BM_polygon_virtual_orbit(benchmark::State& state) {
  const std::size_t n = static_cast<std::size_t>(state.range(0));
  FramedPolygon poly = centrally_framed_polygon(hpoint2(0.0, 0.0), regular_polygon_vertices(n));
  auto edge_point = [&](std::size_t j, double t) {
    HVecR a = normalized(poly.vertices[j % n]), b = normalized(poly.vertices[(j + 1) % n]);
    return hpoint2((1.0 - t) * a[0] / a[2] + t * b[0] / b[2],
                   (1.0 - t) * a[1] / a[2] + t * b[1] / b[2]);
  };
  const std::size_t steps = 2 * n + 2;
  for (auto _ : state) {
    VirtualOrbit orbit = virtual_orbit(poly, edge_point(0, 0.4), edge_point(1, 0.55), steps);
    benchmark::DoNotOptimize(orbit.period_residual);
  }
}
BENCHMARK(BM_polygon_virtual_orbit)->Arg(4)->Arg(6)->Arg(10);

BENCHMARK_MAIN();
