// Micro-benchmarks for the scoring pipeline: fraction estimation, the
// closed-form baseline, and a full two-dimensional subset search.

#include <benchmark/benchmark.h>

#include "tcmi/baseline.hpp"
#include "tcmi/dataset.hpp"
#include "tcmi/search.hpp"
#include "tcmi/synthdata.hpp"
#include "tcmi/tcmi.hpp"

namespace {

tcmi::Dataset uniform_dataset(std::size_t n, std::size_t d, std::uint64_t seed) {
    std::vector<tcmi::Dataset::NamedColumn> features;
    features.reserve(d);
    for (std::size_t f = 0; f < d; ++f) {
        features.emplace_back("x" + std::to_string(f + 1),
                              tcmi::generate({"uniform_random", n, 0, seed * 101 + f + 1}));
    }
    return tcmi::Dataset("y", tcmi::generate({"uniform_random", n, 0, seed}), std::move(features));
}

void BM_FractionScores(benchmark::State& state) {
    const std::size_t n = static_cast<std::size_t>(state.range(0));
    const std::size_t d = static_cast<std::size_t>(state.range(1));
    const tcmi::Dataset data = uniform_dataset(n, d, 7);
    std::vector<std::string> subset(d);
    for (std::size_t f = 0; f < d; ++f) {
        subset[f] = data.feature_name(f);
    }
    const tcmi::GridSpec grid = tcmi::build_grid(data, subset, tcmi::GridStrategy::sample);
    for (auto _ : state) {
        benchmark::DoNotOptimize(tcmi::fraction_scores(data, subset, grid));
    }
}
BENCHMARK(BM_FractionScores)->Args({100, 1})->Args({100, 2})->Args({500, 2})->Args({500, 3});

void BM_ClosedBaseline(benchmark::State& state) {
    const std::size_t n = static_cast<std::size_t>(state.range(0));
    const std::size_t d = static_cast<std::size_t>(state.range(1));
    const tcmi::Dataset data = uniform_dataset(n, d, 11);
    std::vector<std::size_t> columns(d);
    for (std::size_t f = 0; f < d; ++f) {
        columns[f] = f;
    }
    for (auto _ : state) {
        // A fresh engine per iteration so memoization does not hide the cost.
        tcmi::BaselineEngine engine(data);
        benchmark::DoNotOptimize(engine.subset_baseline(columns, tcmi::Orientation::forward));
    }
}
BENCHMARK(BM_ClosedBaseline)->Args({100, 1})->Args({100, 2})->Args({500, 2});

void BM_SubsetScore(benchmark::State& state) {
    const std::size_t n = static_cast<std::size_t>(state.range(0));
    const tcmi::Dataset data = uniform_dataset(n, 2, 13);
    for (auto _ : state) {
        tcmi::SubsetScorer scorer(data, {});
        benchmark::DoNotOptimize(scorer.score(std::vector<std::size_t>{0, 1}));
    }
}
BENCHMARK(BM_SubsetScore)->Arg(100)->Arg(200)->Arg(500);

void BM_BranchAndBound(benchmark::State& state) {
    const std::size_t n = static_cast<std::size_t>(state.range(0));
    const tcmi::Dataset data = tcmi::bivariate_normal_suite(n, 3);
    tcmi::SearchConfig config;
    config.max_dim = 2;
    for (auto _ : state) {
        benchmark::DoNotOptimize(tcmi::branch_and_bound(data, config));
    }
}
BENCHMARK(BM_BranchAndBound)->Arg(100)->Arg(200)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
