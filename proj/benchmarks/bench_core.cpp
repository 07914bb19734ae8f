#include <benchmark/benchmark.h>

#include "hetrrr/admm.hpp"
#include "hetrrr/penalty.hpp"
#include "hetrrr/reduced_rank.hpp"
#include "hetrrr/selection.hpp"
#include "hetrrr/simulate.hpp"

using namespace hetrrr;

namespace {

SimulatedData example(int n) {
    auto spec = example1_spec(SimSetting::I, 1.5, 1.0, 3);
    spec.n = n;
    return simulate(spec);
}

}  // namespace

// Fixed iteration count so the figure is time per ADMM sweep over all pairs.
static void BM_AdmmIterations(benchmark::State& state) {
    const auto sim = example(static_cast<int>(state.range(0)));
    const LeastSquaresDesign design(sim.train.X);
    const AdmmState init = init_ridge_fusion(sim.train, design);
    AdmmConfig cfg;
    cfg.rank = 3;
    cfg.lambda = 0.5;
    cfg.max_iter = 50;
    cfg.epsilon = 1e-300;
    cfg.dual_epsilon = 1e-300;
    for (auto _ : state) {
        auto fit = admm_fit(sim.train, design, cfg, PenaltySpec::mcp(), &init);
        benchmark::DoNotOptimize(fit.A_hat.data());
    }
    state.SetItemsProcessed(state.iterations() * cfg.max_iter);
}
BENCHMARK(BM_AdmmIterations)->Arg(50)->Arg(100)->Arg(200)->Unit(benchmark::kMillisecond);

static void BM_DeltaProx(benchmark::State& state) {
    const auto spec = state.range(0) == 0 ? PenaltySpec::mcp() : PenaltySpec::scad();
    double z = 0.0;
    for (auto _ : state) {
        z += 1e-3;
        if (z > 10.0) z = 0.0;
        benchmark::DoNotOptimize(delta_prox_scale(z, 1.0, 1.0, spec));
    }
}
BENCHMARK(BM_DeltaProx)->Arg(0)->Arg(1);

static void BM_ReducedRank(benchmark::State& state) {
    const auto sim = example(static_cast<int>(state.range(0)));
    const LeastSquaresDesign design(sim.train.X);
    for (auto _ : state) {
        auto fit = design.rrr(sim.train.Y, 3);
        benchmark::DoNotOptimize(fit.B_hat.data());
    }
}
BENCHMARK(BM_ReducedRank)->Arg(100)->Arg(1000);

static void BM_RidgeInit(benchmark::State& state) {
    const auto sim = example(static_cast<int>(state.range(0)));
    for (auto _ : state) {
        auto st = init_ridge_fusion(sim.train);
        benchmark::DoNotOptimize(st.A.data());
    }
}
BENCHMARK(BM_RidgeInit)->Arg(100)->Arg(200)->Unit(benchmark::kMillisecond);

static void BM_SelectRankThree(benchmark::State& state) {
    const auto sim = example(100);
    SelectionOptions opt;
    opt.ranks = {3};
    for (auto _ : state) {
        auto rep = select_model(sim.train, PenaltySpec::mcp(), opt);
        benchmark::DoNotOptimize(rep.best_lambda);
    }
}
BENCHMARK(BM_SelectRankThree)->Unit(benchmark::kMillisecond)->Iterations(2);

BENCHMARK_MAIN();
