#include <semiplanar/extension.hpp>
#include <semiplanar/laplace.hpp>
#include <semiplanar/surface.hpp>
#include <semiplanar/tiling.hpp>

#include <benchmark/benchmark.h>

#include <cmath>
#include <random>

using namespace semiplanar;

static void BM_Generate(benchmark::State& state) {
    for (auto _ : state) {
        benchmark::DoNotOptimize(generate({TilingKind::TruncatedSquare, static_cast<int>(state.range(0))}));
    }
}
BENCHMARK(BM_Generate)->Arg(8)->Arg(16)->Unit(benchmark::kMillisecond);

static void BM_DirichletSquare(benchmark::State& state) {
    const int R = static_cast<int>(state.range(0));
    const GeneratedTiling t = generate({TilingKind::Square, R + 1});
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> value(-1.0, 1.0);
    std::vector<double> data(t.graph.vertex_count());
    for (double& x : data) x = value(rng);
    const DirichletProblem problem = ball_problem(t.graph, t.center, R, [&](VertexId v) { return data[v]; });
    for (auto _ : state) benchmark::DoNotOptimize(solve_dirichlet(problem));
}
BENCHMARK(BM_DirichletSquare)->Arg(10)->Arg(20)->Arg(40)->Unit(benchmark::kMillisecond);

static void BM_ExtendFace(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    std::vector<double> values(n);
    for (int k = 0; k < n; ++k) values[k] = std::sin(1.3 * k);
    for (auto _ : state) benchmark::DoNotOptimize(extend_face(0, n, values, kDefaultOrder, kDefaultSamples));
}
BENCHMARK(BM_ExtendFace)->Arg(3)->Arg(8)->Arg(12)->Unit(benchmark::kMicrosecond);

static void BM_SeriesEvaluate(benchmark::State& state) {
    std::vector<double> values{0.3, -1.0, 2.0, 0.5, 1.5, -0.2};
    const FaceFourier f = extend_face(0, 6, values, kDefaultOrder, kDefaultSamples);
    double eta = 0.0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(f.series.evaluate(0.5, eta));
        eta += 0.01;
    }
}
BENCHMARK(BM_SeriesEvaluate);

static void BM_MeshDistances(benchmark::State& state) {
    const GeneratedTiling t = generate({TilingKind::Square, 12});
    const MetricMesh mesh(t.graph, 1.0 / static_cast<double>(state.range(0)));
    const SurfacePoint p = vertex_point(t.graph, t.center);
    for (auto _ : state) benchmark::DoNotOptimize(mesh.distances_from(p));
}
BENCHMARK(BM_MeshDistances)->Arg(5)->Arg(10)->Arg(20)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
