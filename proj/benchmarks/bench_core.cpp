#include <benchmark/benchmark.h>

#include "fanocav/fano.hpp"
#include "fanocav/langevin.hpp"
#include "fanocav/presets.hpp"
#include "fanocav/response.hpp"
#include "fanocav/sweep.hpp"

using namespace fanocav;

namespace {

EffectiveParams base() {
    EffectiveParams p;
    p.kappa = 0.1;
    p.gamma_b = 7.5e-7;
    p.Delta = 0.8;
    p.g = 0.01;
    p.U_eff = 1.0;
    p.nu = 100.0;
    p.omega_b_si = from_hz(1e4);
    return p;
}

void BM_SolveSidebands(benchmark::State& state) {
    const auto p = base();
    const bool counter = state.range(0) != 0;
    double d = 0.9;
    for (auto _ : state) {
        benchmark::DoNotOptimize(solve_sidebands(p, d, counter));
        d = d < 1.1 ? d + 1e-5 : 0.9;
    }
}
BENCHMARK(BM_SolveSidebands)->Arg(0)->Arg(1);

void BM_Spectrum(benchmark::State& state) {
    const auto p = base();
    const auto grid = linspace(0.5, 1.5, static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(compute_spectrum(p, grid));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Spectrum)->Arg(201)->Arg(2001);

void BM_FanoFit(benchmark::State& state) {
    const auto grid = linspace(0.9, 1.1, 801);
    const auto p = base();
    std::vector<double> mu;
    for (double d : grid) mu.push_back(evaluate(p, d).mu);
    const auto guess = guess_from_landmarks(grid, mu, 2.0);
    for (auto _ : state) benchmark::DoNotOptimize(fit_fano(grid, mu, guess));
}
BENCHMARK(BM_FanoFit);

void BM_OracleCase(benchmark::State& state) {
    const auto cases = draw_stable_cases(1, 7);
    for (auto _ : state) benchmark::DoNotOptimize(compare_with_solver(cases[0].params, cases[0].delta));
}
BENCHMARK(BM_OracleCase)->Unit(benchmark::kMillisecond);

void BM_Sweep(benchmark::State& state) {
    const RunSettings s = preset_config("fig11").build();
    SweepSpec spec;
    spec.base = s.params;
    spec.axis1 = Axis{"P_l", 1e-4, 1e-2, 51, Spacing::log, {}};
    spec.axis2 = Axis{"Delta", 0.3, 1.7, 51, Spacing::linear, {}};
    spec.observable = Observable::tau_g;
    spec.stability = StabilityPolicy::report;
    spec.threads = static_cast<unsigned>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(run_sweep(spec));
}
BENCHMARK(BM_Sweep)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond)->UseRealTime();

}  // namespace

BENCHMARK_MAIN();
