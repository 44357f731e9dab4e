#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "logeq/channel.hpp"
#include "logeq/equalizer.hpp"
#include "logeq/harness.hpp"
#include "logeq/signal.hpp"

namespace {

std::vector<double> random_regressor(std::size_t n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> dist(-1.5, 1.5);
    std::vector<double> r(n);
    for (double& v : r) v = dist(rng);
    return r;
}

void BM_StepLclma(benchmark::State& state) {
    const auto taps = static_cast<std::size_t>(state.range(0));
    logeq::EqualizerConfig cfg;
    cfg.causal = static_cast<int>(taps) - 1;
    auto eq = logeq::EqualizerState::make(cfg);
    const auto reg = random_regressor(taps, 1);
    double e = 0.37;
    for (auto _ : state) {
        logeq::step_lclma(eq, reg, e, 1e-4, 1.0);
        e = -e;
        benchmark::DoNotOptimize(eq.w.data());
    }
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(taps));
}
BENCHMARK(BM_StepLclma)->Arg(32)->Arg(362);

void BM_StepNormalizedLclma(benchmark::State& state) {
    const auto taps = static_cast<std::size_t>(state.range(0));
    logeq::EqualizerConfig cfg;
    cfg.causal = static_cast<int>(taps) - 1;
    auto eq = logeq::EqualizerState::make(cfg);
    const auto reg = random_regressor(taps, 2);
    double e = 0.37;
    for (auto _ : state) {
        logeq::step_normalized_lclma(eq, reg, e, 1e-4, 1.0);
        e = -e;
        benchmark::DoNotOptimize(eq.w.data());
    }
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(taps));
}
BENCHMARK(BM_StepNormalizedLclma)->Arg(32)->Arg(362);

void BM_ApplyChannel(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const auto frame = logeq::generate_bits(7, n, logeq::BitPattern::random());
    const auto cfg = logeq::ExperimentConfig::preset("desk-linear-training");
    const auto noise = logeq::snr_to_noise(30.0, 1e4, 0.1);
    std::uint64_t seed = 0;
    for (auto _ : state) {
        auto r = logeq::apply_channel(frame, cfg.channel, noise, seed++);
        benchmark::DoNotOptimize(r.data());
    }
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(n));
}
BENCHMARK(BM_ApplyChannel)->Arg(10000);

void BM_RunTrialDesk(benchmark::State& state) {
    auto cfg = logeq::ExperimentConfig::preset("desk-linear-training");
    cfg.frame_length = 10000;
    const logeq::CellKey key{logeq::Algorithm::LCLMA, 30.0, 1.0};
    int trial = 0;
    for (auto _ : state) {
        auto res = logeq::run_trial(cfg, key, trial++);
        benchmark::DoNotOptimize(res.final_nase);
    }
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(cfg.frame_length));
}
BENCHMARK(BM_RunTrialDesk);

}  // namespace

BENCHMARK_MAIN();
