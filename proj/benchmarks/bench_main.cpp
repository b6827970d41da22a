#include <benchmark/benchmark.h>

#include "ube/analytics.hpp"
#include "ube/hypergeometric.hpp"
#include "ube/laplace.hpp"
#include "ube/montecarlo.hpp"

using namespace ube;

static void BM_Hyp2f1Series(benchmark::State& state) {
    const double b = 1.0 / 1.05;
    for (auto _ : state) benchmark::DoNotOptimize(gauss_2f1(3.0, b, 1.0 + b, -0.3));
}
BENCHMARK(BM_Hyp2f1Series);

static void BM_Hyp2f1Pfaff(benchmark::State& state) {
    const double b = 1.0 / 1.75;
    for (auto _ : state) benchmark::DoNotOptimize(gauss_2f1(2.0, b, 1.0 + b, -7.5));
}
BENCHMARK(BM_Hyp2f1Pfaff);

static void BM_Hyp2f1Reciprocal(benchmark::State& state) {
    const double b = 1.0 / 1.75;
    for (auto _ : state) benchmark::DoNotOptimize(gauss_2f1(1.0, b, 1.0 + b, -1e6));
}
BENCHMARK(BM_Hyp2f1Reciprocal);

static void BM_ModelConstruction(benchmark::State& state) {
    const Scenario sc = Scenario::defaults(state.range(0) ? Tech::Mmwave : Tech::Lte);
    for (auto _ : state) {
        const BackhaulModel model(sc);
        benchmark::DoNotOptimize(&model);
    }
}
BENCHMARK(BM_ModelConstruction)->Arg(0)->Arg(1);

static void BM_LaplaceDerivatives(benchmark::State& state) {
    Scenario sc = Scenario::defaults(Tech::Mmwave);
    sc.tech.mmw->alignment_prob = 0.5;
    const BackhaulModel model(sc);
    const double r1 = 300.0;
    const double s = model.s_value({LinkType::Los, r1}, sc.tech.threshold);
    const InterferenceTransform t(model, r1, LinkType::Los);
    const int order = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(laplace_derivatives(t, order, s));
}
BENCHMARK(BM_LaplaceDerivatives)->DenseRange(0, 4);

static void BM_ClosedFormTransform(benchmark::State& state) {
    Scenario sc = Scenario::defaults(Tech::Mmwave);
    sc.tech.mmw->alignment_prob = 0.5;
    const BackhaulModel model(sc);
    const double s = model.s_value({LinkType::Los, 300.0}, sc.tech.threshold);
    for (auto _ : state) benchmark::DoNotOptimize(model.laplace_mmwave_closed(s, 300.0, LinkType::Los));
}
BENCHMARK(BM_ClosedFormTransform);

static void BM_BackhaulProbability(benchmark::State& state) {
    const Scenario sc = Scenario::defaults(state.range(0) ? Tech::Mmwave : Tech::Lte);
    const BackhaulModel model(sc);
    for (auto _ : state) benchmark::DoNotOptimize(model.backhaul_probability());
}
BENCHMARK(BM_BackhaulProbability)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

static void BM_MonteCarloTrial(benchmark::State& state) {
    const Scenario sc = Scenario::defaults(state.range(0) ? Tech::Mmwave : Tech::Lte);
    const TrialConfig cfg;
    Rng rng = block_rng(1, 0);
    for (auto _ : state) benchmark::DoNotOptimize(run_trial(sc, cfg, rng));
}
BENCHMARK(BM_MonteCarloTrial)->Arg(0)->Arg(1)->Unit(benchmark::kMicrosecond);
BENCHMARK_MAIN();
