#include <benchmark/benchmark.h>

#include <memory>

#include "ccdiv/commands.hpp"
#include "ccdiv/diversity.hpp"
#include "ccdiv/graph.hpp"
#include "ccdiv/instance.hpp"
#include "ccdiv/perf_ratio.hpp"
#include "ccdiv/solvers.hpp"

namespace {

using namespace ccdiv;

std::shared_ptr<const CoverageGraph> bench_graph(int n, double p) {
    return std::make_shared<CoverageGraph>(generate_random_graph(n, p, 7));
}

ChanceInstance bench_instance(int n, double p) {
    return sample_initial_instance(bench_graph(n, p), 11, 1000.0, 0.05);
}

void BM_CoverageCount(benchmark::State& state) {
    const auto n = static_cast<int>(state.range(0));
    const auto g = bench_graph(n, 10.0 / n);
    Solution x(n);
    for (int i = 0; i < n; i += 2) x.bits[static_cast<std::size_t>(i)] = 1;
    for (auto _ : state) benchmark::DoNotOptimize(coverage_count(*g, x));
}
BENCHMARK(BM_CoverageCount)->Arg(50)->Arg(500);

void BM_EvaluateFitness(benchmark::State& state) {
    const auto n = static_cast<int>(state.range(0));
    const auto inst = bench_instance(n, 10.0 / n);
    Solution x(n);
    for (int i = 0; i < n; i += 2) x.bits[static_cast<std::size_t>(i)] = 1;
    for (auto _ : state) benchmark::DoNotOptimize(evaluate_fitness(inst, x));
}
BENCHMARK(BM_EvaluateFitness)->Arg(50)->Arg(500);

void BM_SolverRun(benchmark::State& state) {
    const auto inst = bench_instance(50, 0.1);
    SolverConfig cfg;
    cfg.evaluation_budget = 2000;
    cfg.algorithm = static_cast<Algorithm>(state.range(0));
    std::uint64_t seed = 0;
    for (auto _ : state) {
        cfg.seed = seed++;
        benchmark::DoNotOptimize(run_solver(inst, cfg).best_objective);
    }
}
BENCHMARK(BM_SolverRun)
    ->Arg(static_cast<int>(Algorithm::kEa))
    ->Arg(static_cast<int>(Algorithm::kFga))
    ->Arg(static_cast<int>(Algorithm::kGhc));

void BM_DiscountedRatio(benchmark::State& state) {
    const auto inst = bench_instance(50, 0.1);
    SolverConfig ea, ghc;
    ea.evaluation_budget = ghc.evaluation_budget = 2000;
    ea.algorithm = Algorithm::kEa;
    ghc.algorithm = Algorithm::kGhc;
    std::uint64_t seed = 0;
    for (auto _ : state)
        benchmark::DoNotOptimize(discounted_ratio(inst, ea, ghc, 10, 0.9, seed++).discounted);
}
BENCHMARK(BM_DiscountedRatio)->Unit(benchmark::kMillisecond);

void BM_MutateIndependent(benchmark::State& state) {
    const auto inst = bench_instance(500, 0.02);
    const auto params = commands::default_mutation_params(FeatureKind::kCostMean);
    std::uint64_t seed = 0;
    for (auto _ : state) benchmark::DoNotOptimize(mutate_independent(inst, 1, params, seed++));
}

void BM_MutateDependent(benchmark::State& state) {
    const auto inst = bench_instance(500, 0.02);
    const auto params = commands::default_mutation_params(FeatureKind::kCostStd);
    std::uint64_t seed = 0;
    for (auto _ : state) benchmark::DoNotOptimize(mutate_dependent(inst, 1, params, seed++));
}
BENCHMARK(BM_MutateIndependent);
BENCHMARK(BM_MutateDependent);

}  // namespace

BENCHMARK_MAIN();
