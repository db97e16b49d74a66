#include <benchmark/benchmark.h>

#include "llrlab/llrdist.hpp"
#include "llrlab/mcharness.hpp"
#include "llrlab/rocauc.hpp"

using namespace llrlab;

static void BM_MarginalDensity(benchmark::State& state) {
    const TwoClassProblem p = reference_problem();
    const auto grid = default_h_grid(p, static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(marginal_density(grid, ClassLabel::omega2, p));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_MarginalDensity)->Arg(200)->Arg(2000)->Unit(benchmark::kMillisecond);

static void BM_EmpiricalAuc(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    SeededRng rng(1, 1);
    ScoreSet s;
    for (std::size_t i = 0; i < n; ++i) {
        s.class1.push_back(rng.normal() + 1.0);
        s.class2.push_back(rng.normal());
    }
    for (auto _ : state) benchmark::DoNotOptimize(empirical_auc(s));
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_EmpiricalAuc)->RangeMultiplier(10)->Range(100, 100000)->Complexity(benchmark::oNLogN);

static void BM_RunTrial(benchmark::State& state) {
    const auto p = static_cast<std::size_t>(state.range(0));
    const auto n = static_cast<std::size_t>(state.range(1));
    const double c = calibrate_c(p, 0.8);
    std::size_t t = 0;
    for (auto _ : state) benchmark::DoNotOptimize(run_trial(p, n, c, 1000, trial_stream(1, p, n, t++)));
}
BENCHMARK(BM_RunTrial)->Args({3, 20})->Args({11, 20})->Args({11, 2000})->Unit(benchmark::kMicrosecond);

static void BM_MvnSample(benchmark::State& state) {
    const GaussianParams g = reference_problem().class1;
    SeededRng rng(2, 2);
    for (auto _ : state) benchmark::DoNotOptimize(mvn_sample(g, 1000, rng));
    state.SetItemsProcessed(state.iterations() * 1000);
}
BENCHMARK(BM_MvnSample);
BENCHMARK_MAIN();
