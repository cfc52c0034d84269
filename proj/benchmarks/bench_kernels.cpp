#include <benchmark/benchmark.h>

#include <cmath>

#include "pbk/kernels.hpp"

namespace {

using namespace pbk;
using namespace pbk::kernels;

const harmonic::HarmonicParams kHarmonic{MarketParams(0.2, 0.05), 0.0};
const barrier::BarrierParams kBarrier{MarketParams(0.2, 0.05), std::log(80.0), std::log(120.0)};

void BM_HarmonicSpectral(benchmark::State& state) {
    KernelRequest req{Which::p1, 0.1, -0.05, 0.5, Method::spectral, int(state.range(0))};
    for (auto _ : state) benchmark::DoNotOptimize(kernel_spectral(req, kHarmonic).value);
}
BENCHMARK(BM_HarmonicSpectral)->Arg(20)->Arg(80)->Arg(200);

void BM_HarmonicMehler(benchmark::State& state) {
    KernelRequest req{Which::p1, 0.1, -0.05, 0.5, Method::closed, 0};
    for (auto _ : state) benchmark::DoNotOptimize(kernel_closed_harmonic(req, kHarmonic).value);
}
BENCHMARK(BM_HarmonicMehler);

void BM_BarrierSineSeries(benchmark::State& state) {
    KernelRequest req{Which::p1, 4.55, 4.65, 0.5, Method::spectral, int(state.range(0))};
    for (auto _ : state) benchmark::DoNotOptimize(kernel_spectral(req, kBarrier).value);
}
BENCHMARK(BM_BarrierSineSeries)->Arg(20)->Arg(80)->Arg(200);

void BM_BarrierTheta3(benchmark::State& state) {
    KernelRequest req{Which::p1, 4.55, 4.65, state.range(0) / 100.0, Method::closed, 0};
    for (auto _ : state) benchmark::DoNotOptimize(kernel_closed_barrier(req, kBarrier).value);
}
BENCHMARK(BM_BarrierTheta3)->Arg(5)->Arg(50)->Arg(200);

void BM_ImageSeries(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(kernel_oracle_image_series(kBarrier, 4.55, 4.65, 0.5));
}
BENCHMARK(BM_ImageSeries);

}  // namespace
