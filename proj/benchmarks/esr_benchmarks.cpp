#include <benchmark/benchmark.h>

#include <cmath>
#include <limits>
#include <vector>

#include "esr/energy_observable.hpp"
#include "esr/position_observable.hpp"
#include "esr/sampler.hpp"
#include "esr/states.hpp"

namespace {

esr::FockVector spread_state(std::size_t n_max) {
    std::vector<esr::Complex> c(n_max + 1);
    for (std::size_t n = 0; n <= n_max; ++n) c[n] = std::polar(1.0 / std::sqrt(n_max + 1.0), 0.3 * n);
    return esr::FockVector(std::move(c));
}

void BM_HermiteFunctions(benchmark::State &state) {
    const auto n_max = static_cast<std::size_t>(state.range(0));
    const esr::OscillatorParams params;
    std::vector<double> out;
    double q = 0.1;
    for (auto _ : state) {
        esr::hermite_functions(n_max, q, params, out);
        benchmark::DoNotOptimize(out.data());
        q += 1e-6;
    }
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(n_max + 1));
}
BENCHMARK(BM_HermiteFunctions)->Arg(16)->Arg(64)->Arg(256);

void BM_FockToPosition(benchmark::State &state) {
    const auto n_max = static_cast<std::size_t>(state.range(0));
    const auto psi = spread_state(n_max);
    const auto grid = esr::default_grid(esr::OscillatorParams{}, n_max);
    for (auto _ : state) benchmark::DoNotOptimize(esr::fock_to_position(psi, grid));
}
BENCHMARK(BM_FockToPosition)->Arg(16)->Arg(64)->Unit(benchmark::kMillisecond);

void BM_PositionToFock(benchmark::State &state) {
    const std::size_t n_max = 64;
    const auto grid = esr::default_grid(esr::OscillatorParams{}, n_max);
    const auto wf = esr::fock_to_position(spread_state(n_max), grid);
    for (auto _ : state) benchmark::DoNotOptimize(esr::position_to_fock(wf, n_max));
}
BENCHMARK(BM_PositionToFock)->Unit(benchmark::kMillisecond);

void BM_IntervalProbability(benchmark::State &state) {
    const std::size_t n_max = 64;
    const auto wf = esr::fock_to_position(spread_state(n_max), esr::default_grid(esr::OscillatorParams{}, n_max));
    const auto sel = esr::IntervalUnion::of({{-1.234, 0.5}, {2.0, 3.7}});
    const auto profile = esr::make_gaussian_window_profile(0.9, 0.0, 1.0);
    for (auto _ : state) benchmark::DoNotOptimize(esr::overall_prob_position(wf, sel, profile));
}
BENCHMARK(BM_IntervalProbability)->Unit(benchmark::kMicrosecond);

void BM_EnergyTrials(benchmark::State &state) {
    const std::size_t trials = 10000;
    const esr::State psi = spread_state(esr::kDefaultTruncation);
    const auto context = esr::SamplerContext::defaults(esr::OscillatorParams{});
    const std::vector<esr::MeasurementSpec> specs{esr::EnergyMeasurement{esr::make_geometric_profile(0.9, 0.95)}};
    for (auto _ : state) benchmark::DoNotOptimize(esr::run_trials(psi, specs, trials, 1, context, 1));
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(trials));
}
BENCHMARK(BM_EnergyTrials)->Unit(benchmark::kMillisecond);

void BM_PositionTrials(benchmark::State &state) {
    const std::size_t trials = 200;
    constexpr double inf = std::numeric_limits<double>::infinity();
    const esr::State psi = spread_state(16);
    const auto context = esr::SamplerContext::defaults(esr::OscillatorParams{}, 16);
    const std::vector<esr::MeasurementSpec> specs{esr::PositionMeasurement{
        esr::PositionBins({-inf, -1.0, 0.0, 1.0, inf}), esr::make_constant_position_profile(0.8)}};
    for (auto _ : state) benchmark::DoNotOptimize(esr::run_trials(psi, specs, trials, 1, context, 1));
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(trials));
}
BENCHMARK(BM_PositionTrials)->Unit(benchmark::kMillisecond);

}  // namespace
