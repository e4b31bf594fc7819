// Throughput of the exact caustic-polynomial pipeline: series coefficients,
// determinants, root clustering, and closure verification.
#include <benchmark/benchmark.h>

#include <billiards/caustics/cayley.hpp>
#include <billiards/caustics/poncelet.hpp>
#include <billiards/projcore/quadric.hpp>

using namespace billiards;

static void BM_caustic_polynomial(benchmark::State& state) {
  const unsigned n = static_cast<unsigned>(state.range(0));
  const Rational a(2), b(1);
  for (auto _ : state) {
    RationalPoly p = normalized_caustic_polynomial(n, a, b);
    benchmark::DoNotOptimize(p.degree());
  }
}
BENCHMARK(BM_caustic_polynomial)->DenseRange(3, 8);

static void BM_caustic_polynomial_big_rationals(benchmark::State& state) {
  const unsigned n = static_cast<unsigned>(state.range(0));
  const Rational a = Rational(322687697779LL) / Rational(131836323589LL);
  const Rational b = Rational(75025) / Rational(121393);
  for (auto _ : state) {
    RationalPoly p = normalized_caustic_polynomial(n, a, b);
    benchmark::DoNotOptimize(p.degree());
  }
}
BENCHMARK(BM_caustic_polynomial_big_rationals)->DenseRange(3, 6);

static void BM_clustered_roots(benchmark::State& state) {
  const unsigned n = static_cast<unsigned>(state.range(0));
  RationalPoly p = normalized_caustic_polynomial(n, Rational(2), Rational(1));
  for (auto _ : state) {
    auto roots = clustered_roots(p);
    benchmark::DoNotOptimize(roots.size());
  }
}
BENCHMARK(BM_clustered_roots)->DenseRange(3, 8);

static void BM_poncelet_closure(benchmark::State& state) {
  const unsigned n = static_cast<unsigned>(state.range(0));
  const double a = 2.0, b = 1.0;
  QuadricR outer = axis_conic(a, b);
  auto fam = ConfocalFamily::euclidean({a, b});
  // inner elliptic roots frozen from the n = 3 and n = 4 reports
  const double lambda = (n == 3) ? 0.92820323027550917 : 2.0 / 3.0;
  QuadricR inner = fam.member(lambda);
  for (auto _ : state) {
    auto rep = poncelet_closure(outer, inner, n, 10);
    benchmark::DoNotOptimize(rep.closes);
  }
}
BENCHMARK(BM_poncelet_closure)->Arg(3)->Arg(4);

BENCHMARK_MAIN();
