#include <benchmark/benchmark.h>

#include <cmath>

#include "pbk/quadrature.hpp"
#include "pbk/specialfn.hpp"

namespace {

using namespace pbk;

void BM_GaussHermiteRule(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(quadrature::gauss_hermite(int(state.range(0))));
}
BENCHMARK(BM_GaussHermiteRule)->Arg(64)->Arg(512)->Arg(4096)->Unit(benchmark::kMicrosecond);

void BM_GaussLegendreRule(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(quadrature::gauss_legendre(int(state.range(0)), {0.0, 1.0}));
}
BENCHMARK(BM_GaussLegendreRule)->Arg(64)->Arg(512)->Arg(4096)->Unit(benchmark::kMicrosecond);

void BM_AdaptiveHermiteInner(benchmark::State& state) {
    const int n = int(state.range(0));
    const ComplexFn f = [n](double x) { return Complex(specialfn::hermite_function(n, x)); };
    const auto spec = quadrature::RuleSpec::hermite(0.0, 1.0);
    for (auto _ : state) benchmark::DoNotOptimize(quadrature::adaptive_inner_product(f, f, spec, 1e-12));
}
BENCHMARK(BM_AdaptiveHermiteInner)->Arg(5)->Arg(40)->Unit(benchmark::kMillisecond);

}  // namespace
