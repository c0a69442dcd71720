#include <benchmark/benchmark.h>

#include "mfvmd/bolt.hpp"
#include "mfvmd/hilbert.hpp"
#include "mfvmd/morphology.hpp"
#include "mfvmd/synthesis.hpp"
#include "mfvmd/vmd.hpp"

using namespace mfvmd;

static const Signal& eq10() {
    static const Signal s = gen_piecewise(two_tone_switch_spec());
    return s;
}

static const Signal& eq10_noisy() {
    static const Signal s = add_noise(eq10(), 5.0, 1);
    return s;
}

static void BM_VmdCleanK2(benchmark::State& state) {
    VMDConfig cfg;
    cfg.mode_count = 2;
    for (auto _ : state) benchmark::DoNotOptimize(vmd_decompose(eq10(), cfg));
}
BENCHMARK(BM_VmdCleanK2);

static void BM_VmdNoisyK5(benchmark::State& state) {
    VMDConfig cfg;
    cfg.mode_count = 5;
    for (auto _ : state) benchmark::DoNotOptimize(vmd_decompose(eq10_noisy(), cfg));
}
BENCHMARK(BM_VmdNoisyK5);

static void BM_MmcFilter(benchmark::State& state) {
    const auto g = StructuringElement::flat(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(mmc_filter(eq10_noisy(), g));
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_MmcFilter)->Arg(3)->Arg(9)->Arg(31)->Arg(101);

static void BM_SelectSeWidth(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(select_se_width(eq10_noisy(), 3, 15));
}
BENCHMARK(BM_SelectSeWidth);

static void BM_AnalyticSignal(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(analytic_signal(eq10()));
}
BENCHMARK(BM_AnalyticSignal);

static void BM_HilbertSpectrumK2(benchmark::State& state) {
    VMDConfig cfg;
    cfg.mode_count = 2;
    const VMDResult r = vmd_decompose(eq10(), cfg);
    std::vector<Signal> modes;
    for (const auto& m : r.modes) modes.push_back(m.u);
    for (auto _ : state) benchmark::DoNotOptimize(hilbert_spectrum(modes));
}
BENCHMARK(BM_HilbertSpectrumK2);

static void BM_AnalyzeBolt(benchmark::State& state) {
    BoltEchoSpec spec;
    const Signal record = add_noise(gen_bolt_echo(spec), 5.0, 1);
    BoltAnalysisConfig cfg;
    cfg.mfvmd.vmd.mode_count = 3;
    for (auto _ : state) benchmark::DoNotOptimize(analyze_bolt(record, cfg));
}
BENCHMARK(BM_AnalyzeBolt);

BENCHMARK_MAIN();
