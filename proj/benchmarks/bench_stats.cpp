#include "abcem/rng.hpp"
#include "abcem/stats.hpp"

#include <benchmark/benchmark.h>

namespace {

using namespace abcem;

ReturnSeries sample(std::int64_t n) {
    RngStream rng(2, StreamComponent::test_oracle);
    ReturnSeries s;
    s.values.resize(static_cast<std::size_t>(n));
    for (double& v : s.values) v = rng.normal();
    return s;
}

void BM_ExcessKurtosis(benchmark::State& state) {
    const ReturnSeries s = sample(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(excess_kurtosis(s));
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_ExcessKurtosis)->Arg(10000)->Arg(1000000);

void BM_Autocorrelation20(benchmark::State& state) {
    const ReturnSeries s = sample(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(autocorrelation(s, 20));
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Autocorrelation20)->Arg(10000)->Arg(100000);

void BM_HillEstimator(benchmark::State& state) {
    const ReturnSeries s = sample(state.range(0));
    std::vector<double> magnitudes;
    for (double v : s.values) magnitudes.push_back(v < 0 ? -v : v);
    for (auto _ : state) {
        benchmark::DoNotOptimize(hill_estimator(magnitudes));
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_HillEstimator)->Arg(10000)->Arg(100000);

void BM_QQPairs(benchmark::State& state) {
    const ReturnSeries s = sample(100000);
    for (auto _ : state) {
        benchmark::DoNotOptimize(qq_pairs(s, 100));
    }
}
BENCHMARK(BM_QQPairs);

} // namespace
