#include <benchmark/benchmark.h>

#include "mfunc/core_math.hpp"
#include "mfunc/density.hpp"
#include "mfunc/fourier.hpp"
#include "mfunc/montecarlo.hpp"

using namespace mfunc;

static void BM_FourierFactor(benchmark::State& state) {
    const FourierFactorSpec spec(SymPowerParams(1, 0.75), 2);
    const double x = static_cast<double>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(fourier_factor(spec, x));
    }
}
BENCHMARK(BM_FourierFactor)->Arg(1)->Arg(10)->Arg(100);

static void BM_FourierProduct25(benchmark::State& state) {
    const PrimeSet set = PrimeSet::first_n(25);
    const SymPowerParams params(1, 1.0);
    const XGrid grid(20.0, static_cast<int>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(fourier_product(set, params, grid));
    }
}
BENCHMARK(BM_FourierProduct25)->Arg(201)->Arg(801)->Unit(benchmark::kMillisecond)->UseRealTime();

static void BM_DensityInvert(benchmark::State& state) {
    const PrimeSet set = PrimeSet::first_n(25);
    const SymPowerParams params(1, 1.0);
    const auto table = fourier_product(set, params, XGrid(60.0, 3001));
    const auto s = analytic_support(set, params);
    const UGrid u_grid(s.lo - 1.0, s.hi + 1.0, static_cast<int>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(density_invert(table, u_grid));
    }
}
BENCHMARK(BM_DensityInvert)->Arg(501)->Arg(2001)->Unit(benchmark::kMillisecond)->UseRealTime();

static void BM_SatoTateQuantile(benchmark::State& state) {
    double u = 0.0;
    for (auto _ : state) {
        u += 0.6180339887498949;
        if (u >= 1.0) u -= 1.0;
        benchmark::DoNotOptimize(sato_tate_quantile(u));
    }
}
BENCHMARK(BM_SatoTateQuantile);

static void BM_SampleBatch(benchmark::State& state) {
    const PrimeSet set = PrimeSet::first_n(25);
    const SymPowerParams params(1, 1.0);
    const auto n = static_cast<std::uint64_t>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(sample_batch(set, params, n, 1));
    }
    state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()) * state.range(0));
}
BENCHMARK(BM_SampleBatch)->Arg(10000)->Arg(100000)->Unit(benchmark::kMillisecond)->UseRealTime();

static void BM_ChebyshevTraceExpansion(benchmark::State& state) {
    for (auto _ : state) {
        double acc = 0.0;
        for (int ell = 0; ell <= 12; ++ell)
            acc += cheb_coeff(ell, 3, 4) * chebyshev_u(ell, 0.31);
        benchmark::DoNotOptimize(acc);
    }
}
BENCHMARK(BM_ChebyshevTraceExpansion);

BENCHMARK_MAIN();
