// Per-sample throughput of the three adaptive filters across orders.

#include <benchmark/benchmark.h>

#include "anc/filters.hpp"
#include "anc/harness.hpp"
#include "anc/rng.hpp"
#include "anc/signal.hpp"

namespace {

struct Streams {
    std::vector<double> desired;
    std::vector<double> reference;
};

Streams make_streams(std::size_t n) {
    Streams s;
    s.desired.resize(n);
    s.reference.resize(n);
    anc::Rng rng(12345);
    for (std::size_t i = 0; i < n; ++i) {
        s.reference[i] = 0.4 * rng.next_gaussian();
        s.desired[i] = 0.2 * rng.next_gaussian() + 0.5 * s.reference[i];
    }
    return s;
}

template <typename Filter, typename Config>
void run_filter_bench(benchmark::State& state, Config config) {
    const auto streams = make_streams(1 << 14);
    Filter filter(config);
    std::size_t i = 0;
    for (auto _ : state) {
        const auto step =
            filter.process_sample(streams.desired[i], streams.reference[i]);
        benchmark::DoNotOptimize(step.error);
        i = (i + 1) & ((1 << 14) - 1);
    }
    state.SetItemsProcessed(static_cast<int64_t>(state.iterations()));
}

void BM_LmsSample(benchmark::State& state) {
    const auto order = static_cast<std::size_t>(state.range(0));
    run_filter_bench<anc::LmsFilter>(state, anc::LmsConfig{order, 0.05});
}
BENCHMARK(BM_LmsSample)->Arg(5)->Arg(10)->Arg(15)->Arg(32);

void BM_NlmsSample(benchmark::State& state) {
    const auto order = static_cast<std::size_t>(state.range(0));
    run_filter_bench<anc::NlmsFilter>(state, anc::NlmsConfig{order, 0.5});
}
BENCHMARK(BM_NlmsSample)->Arg(5)->Arg(10)->Arg(15)->Arg(32);

void BM_RlsSample(benchmark::State& state) {
    const auto order = static_cast<std::size_t>(state.range(0));
    run_filter_bench<anc::RlsFilter>(state, anc::RlsConfig{order, 0.999, 100.0});
}
BENCHMARK(BM_RlsSample)->Arg(5)->Arg(10)->Arg(15)->Arg(32);

void BM_FullRun(benchmark::State& state) {
    const anc::Signal fixture = anc::synth_speech(2.0, 8000, 42);
    anc::RunConfig config;
    config.algorithm = anc::Algorithm::rls;
    config.order = static_cast<std::size_t>(state.range(0));
    config.step_size = 0.999;
    config.channel = anc::ChannelSpec::standard_path();
    for (auto _ : state) {
        const anc::RunOutput out = anc::run_anc(fixture, config);
        benchmark::DoNotOptimize(out.report.snr_db);
    }
}
BENCHMARK(BM_FullRun)->Arg(5)->Arg(15)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
