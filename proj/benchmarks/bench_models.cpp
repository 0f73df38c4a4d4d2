#include "abcem/engine.hpp"
#include "abcem/presets.hpp"
#include "abcem/rng.hpp"

#include <benchmark/benchmark.h>

namespace {

using namespace abcem;

void BM_CrossStep(benchmark::State& state) {
    SimulationConfig c = preset("cross-base");
    c.num_agents = state.range(0);
    c.seed = 1;
    auto model = make_model(c, default_streams(c.seed));
    MarketState market;
    model->init(market);
    for (auto _ : state) {
        model->step(market);
        benchmark::DoNotOptimize(market.price);
    }
    state.SetItemsProcessed(state.iterations() * state.range(0)); // agent updates
}
BENCHMARK(BM_CrossStep)->Arg(1000)->Arg(100000)->Arg(1000000);

void BM_CrossWealthStep(benchmark::State& state) {
    SimulationConfig c = preset("cross-wealth");
    c.num_agents = state.range(0);
    c.seed = 1;
    auto model = make_model(c, default_streams(c.seed));
    MarketState market;
    model->init(market);
    for (auto _ : state) {
        model->step(market);
        benchmark::DoNotOptimize(market.price);
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_CrossWealthStep)->Arg(1000);

// One iteration = one full 200-step run; the preset's 5%-per-step dividend
// growth rules out stepping a single model instance indefinitely.
void BM_LLSClearanceRun(benchmark::State& state) {
    SimulationConfig c = preset("lls-noisy");
    c.num_agents = state.range(0);
    auto p = std::get<LLSParams>(c.model);
    p.n_total = 100.0 * static_cast<double>(state.range(0));
    c.model = p;
    c.seed = 1;
    for (auto _ : state) {
        benchmark::DoNotOptimize(run_simulation(c));
    }
    state.SetItemsProcessed(state.iterations() * state.range(0) * c.num_steps);
}
BENCHMARK(BM_LLSClearanceRun)->Arg(100)->Arg(1000);

void BM_FWStep(benchmark::State& state) {
    SimulationConfig c = preset("dca-hpm");
    c.seed = 1;
    auto model = make_model(c, default_streams(c.seed));
    MarketState market;
    model->init(market);
    for (auto _ : state) {
        model->step(market);
        benchmark::DoNotOptimize(market.excess_demand);
    }
}
BENCHMARK(BM_FWStep);

void BM_NormalDraw(benchmark::State& state) {
    RngStream rng(1, StreamComponent::test_oracle);
    for (auto _ : state) {
        benchmark::DoNotOptimize(rng.normal());
    }
}
BENCHMARK(BM_NormalDraw);

} // namespace
