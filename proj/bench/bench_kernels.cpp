// Serial reference vs OpenMP kernels. Arg(0) runs the serial path, Arg(1) the
// parallel one; thread count follows OMP_NUM_THREADS.

#include "bandvar/autocov.hpp"
#include "bandvar/estimation.hpp"
#include "bandvar/experiments.hpp"
#include "bandvar/selection.hpp"
#include "bandvar/simulate.hpp"

#include <benchmark/benchmark.h>

using namespace bandvar;

namespace {

const TimeSeries& data() {
    static const TimeSeries ts = [] {
        SimConfig cfg;
        cfg.p = 100;
        cfg.n = 200;
        cfg.k0 = 2;
        cfg.seed = 1;
        return simulate(cfg).series;
    }();
    return ts;
}

Execution mode(const benchmark::State& state) { return state.range(0) ? Execution::parallel : Execution::serial; }

void BM_FitBandedVar(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(fit_banded_var(data(), 2, 1, false, mode(state)));
    state.SetLabel(state.range(0) ? "parallel" : "serial");
}
BENCHMARK(BM_FitBandedVar)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_RssSurface(benchmark::State& state) {
    std::vector<std::size_t> grid(15);
    for (std::size_t k = 0; k < grid.size(); ++k) grid[k] = k + 1;
    for (auto _ : state) benchmark::DoNotOptimize(compute_rss_surface(data(), 1, grid, mode(state)));
    state.SetLabel(state.range(0) ? "parallel" : "serial");
}
BENCHMARK(BM_RssSurface)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_BootstrapBand(benchmark::State& state) {
    BootstrapOptions o;
    o.exec = mode(state);
    const auto grid = default_band_grid(data().length(), data().dim());
    for (auto _ : state) benchmark::DoNotOptimize(bootstrap_select_band(data(), 0, grid, Rng(2), o));
    state.SetLabel(state.range(0) ? "parallel" : "serial");
}
BENCHMARK(BM_BootstrapBand)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_SelectionExperiment(benchmark::State& state) {
    experiments::SelectionExperiment e;
    e.reps = 8;
    for (auto _ : state) benchmark::DoNotOptimize(experiments::run_selection(e, mode(state)));
    state.SetLabel(state.range(0) ? "parallel" : "serial");
}
BENCHMARK(BM_SelectionExperiment)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
