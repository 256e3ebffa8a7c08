#include "plancherel/kernel.hpp"
#include "plancherel/limitkernels.hpp"
#include "plancherel/oracle.hpp"
#include "plancherel/sampler.hpp"
#include "plancherel/shape.hpp"
#include "plancherel/weights.hpp"

#include <benchmark/benchmark.h>

using namespace plancherel;

// Fresh evaluator per iteration so the contour search is included.
static void BM_KernelEntrySmallN(benchmark::State& state) {
    const PlancherelParams p{0.7, 0.3};
    for (auto _ : state) {
        KernelEvaluator ev(p, {});
        benchmark::DoNotOptimize(ev.eval({3, -2}, {2, 1}, KernelKind::K));
    }
}
BENCHMARK(BM_KernelEntrySmallN)->Unit(benchmark::kMillisecond);

static void BM_KernelEntryProportional(benchmark::State& state) {
    const int N = static_cast<int>(state.range(0));
    const PlancherelParams p{N / 8.0, N / 8.0};
    for (auto _ : state) {
        KernelEvaluator ev(p, {});
        benchmark::DoNotOptimize(ev.eval({N, -N / 2}, {N, -N / 2 + 1}, KernelKind::K));
    }
}
BENCHMARK(BM_KernelEntryProportional)->Arg(100)->Arg(400)->Unit(benchmark::kMillisecond);

static void BM_EnumerateSignatures(benchmark::State& state) {
    const int N = static_cast<int>(state.range(0));
    const PlancherelParams p{0.7, 0.7};
    const Window w = auto_window(N, p, Window(-10, 6));
    for (auto _ : state) benchmark::DoNotOptimize(enum_signatures({N, w, p}).size());
}
BENCHMARK(BM_EnumerateSignatures)->DenseRange(1, 3)->Unit(benchmark::kMillisecond);

static void BM_OracleCompare(benchmark::State& state) {
    const PlancherelParams p{0.3, 0.3};
    const EnumerationSpec spec{2, auto_window(2, p, Window(-10, 6)), p};
    CompareOptions opt;
    opt.probe = Window(-10, 6);
    opt.tuple_budget = 50;
    for (auto _ : state) benchmark::DoNotOptimize(compare(spec, opt).max_abs_error);
}
BENCHMARK(BM_OracleCompare)->Unit(benchmark::kMillisecond)->Iterations(1);

static void BM_QRoots(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(q_real_roots({1.0 / 25, 1.0 / 15}).m());
}
BENCHMARK(BM_QRoots);

static void BM_AiryExtIntegral(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(airy_ext_integral({0.0, -1.0}, {1.0, 0.5}));
}
BENCHMARK(BM_AiryExtIntegral)->Unit(benchmark::kMillisecond);

static void BM_AiryExtDouble(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(airy_ext_double({0.0, -1.0}, {1.0, 0.5}));
}
BENCHMARK(BM_AiryExtDouble)->Unit(benchmark::kMillisecond);

static void BM_Pearcey(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(pearcey_P({0.2, 0.3}, {-0.1, -0.5}));
}
BENCHMARK(BM_Pearcey)->Unit(benchmark::kMillisecond);

static void BM_McmcSweeps(benchmark::State& state) {
    SamplerConfig cfg;
    cfg.N = static_cast<int>(state.range(0));
    cfg.params = {1.0, 1.0};
    cfg.burn_in = 0;
    cfg.steps = 1000;
    for (auto _ : state) benchmark::DoNotOptimize(mcmc_sample(cfg, 1000).size());
    state.SetItemsProcessed(state.iterations() * 1000);
}
BENCHMARK(BM_McmcSweeps)->Arg(3)->Arg(10)->Arg(40)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
