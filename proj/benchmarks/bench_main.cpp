#include <benchmark/benchmark.h>

#include "skelocut/examples.hpp"

using namespace skelocut;

static void BM_ConvexHullIcosahedron(benchmark::State& state) {
    Polyhedron I = examples::regular_icosahedron();
    for (auto _ : state) {
        Polyhedron H = convex_hull(I.vertices);
        benchmark::DoNotOptimize(H.edges.size());
    }
}
BENCHMARK(BM_ConvexHullIcosahedron);

BENCHMARK_MAIN();
