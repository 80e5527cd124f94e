#include <benchmark/benchmark.h>

#include "pdmeans/counterexample.hpp"
#include "pdmeans/harness.hpp"
#include "pdmeans/means_multi.hpp"
#include "pdmeans/means_two.hpp"
#include "pdmeans/spectral_equation.hpp"

using namespace pdmeans;

namespace {

MeanProblem bench_problem(std::size_t n, std::size_t m, double cond) {
    Rng rng(2024);
    return random_problem(n, m, cond, rng);
}

void BM_JacobiEigen(benchmark::State& state) {
    const std::size_t n = static_cast<std::size_t>(state.range(0));
    const SymMatrix a = random_spd(n, 1e4, 7).sym();
    for (auto _ : state) benchmark::DoNotOptimize(jacobi_eigensystem(a));
}
BENCHMARK(BM_JacobiEigen)->Arg(5)->Arg(20)->Arg(50);

void BM_GeoMean(benchmark::State& state) {
    const std::size_t n = static_cast<std::size_t>(state.range(0));
    const SPDMatrix a = random_spd(n, 100.0, 1);
    const SPDMatrix b = random_spd(n, 100.0, 2);
    for (auto _ : state) benchmark::DoNotOptimize(geo_mean(a, b));
}
BENCHMARK(BM_GeoMean)->Arg(5)->Arg(20);

void BM_KarcherMean(benchmark::State& state) {
    const MeanProblem p = bench_problem(5, static_cast<std::size_t>(state.range(0)), 100.0);
    for (auto _ : state) benchmark::DoNotOptimize(karcher_mean(p));
}
BENCHMARK(BM_KarcherMean)->Arg(3)->Arg(6);

void BM_WassersteinMean(benchmark::State& state) {
    const MeanProblem p = bench_problem(5, 4, 100.0);
    for (auto _ : state) benchmark::DoNotOptimize(wasserstein_mean(p));
}
BENCHMARK(BM_WassersteinMean);

void BM_SolveEquation(benchmark::State& state) {
    const MeanProblem p = bench_problem(static_cast<std::size_t>(state.range(0)), 2, 100.0);
    const RepFunction g = RepFunction::g_log();
    for (auto _ : state) benchmark::DoNotOptimize(solve_equation(p, g));
}
BENCHMARK(BM_SolveEquation)->Arg(2)->Arg(5);

void BM_ResidualField(benchmark::State& state) {
    const Counterexample ce;
    double u = 1.6;
    for (auto _ : state) {
        benchmark::DoNotOptimize(ce.f_uv(u, 0.52));
        u += 1e-9;  // defeat caching
    }
}
BENCHMARK(BM_ResidualField);

void BM_MirandaCertify(benchmark::State& state) {
    const Counterexample ce;
    const Rect2 rect = Counterexample::second_solution_rect();
    for (auto _ : state)
        benchmark::DoNotOptimize(ce.certify(rect, 4096, 1e-6, 1));
}
BENCHMARK(BM_MirandaCertify);

}  // namespace

BENCHMARK_MAIN();
