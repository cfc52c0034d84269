#include <benchmark/benchmark.h>

#include <cmath>

#include "pbk/pricing.hpp"

namespace {

using namespace pbk;
using namespace pbk::pricing;

void BM_SpectralBarrierCall(benchmark::State& state) {
    const barrier::BarrierParams p{MarketParams(0.2, 0.05), std::log(80.0), std::log(120.0)};
    const Payoff call(PayoffKind::call, 100.0);
    for (auto _ : state)
        benchmark::DoNotOptimize(price_spectral(p, kernels::Which::p1, call, std::log(100.0), 0.5).value);
}
BENCHMARK(BM_SpectralBarrierCall)->Unit(benchmark::kMillisecond);

void BM_MonteCarloBarrier(benchmark::State& state) {
    const Payoff call(PayoffKind::call, 100.0);
    MCConfig cfg;
    cfg.paths = 8192;
    cfg.steps = int(state.range(0));
    for (auto _ : state)
        benchmark::DoNotOptimize(price_mc_barrier(call, 100.0, 80.0, 120.0, 0.2, 0.05, 0.5, cfg).value);
    state.SetItemsProcessed(state.iterations() * cfg.paths);
}
BENCHMARK(BM_MonteCarloBarrier)->Arg(64)->Arg(512)->Unit(benchmark::kMillisecond);

}  // namespace
