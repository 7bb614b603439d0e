#include <benchmark/benchmark.h>

#include "memfilter/gibbs.hpp"
#include "memfilter/mem.hpp"
#include "memfilter/mle.hpp"
#include "memfilter/rng.hpp"
#include "memfilter/simulation.hpp"
#include "memfilter/special_functions.hpp"

using namespace memfilter;

static void BM_std_normal_cdf(benchmark::State& state) {
    double z = -8.0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(std_normal_cdf(z));
        z += 0.001;
        if (z > 8.0) z = -8.0;
    }
}
BENCHMARK(BM_std_normal_cdf);

static void BM_mem_closed_form(benchmark::State& state) {
    const MemConfig cfg{0.7, 0.5, 3};
    double y = 0.1;
    for (auto _ : state) {
        benchmark::DoNotOptimize(mem_closed_form(y, cfg));
        y += 1e-4;
        if (y > 10.0) y = 0.1;
    }
}
BENCHMARK(BM_mem_closed_form);

static void BM_minimize_dual_numeric(benchmark::State& state) {
    const MemConfig cfg{0.7, 0.5, 3};
    double y = 0.1;
    for (auto _ : state) {
        benchmark::DoNotOptimize(minimize_dual_numeric(y, cfg));
        y += 1e-3;
        if (y > 10.0) y = 0.1;
    }
}
BENCHMARK(BM_minimize_dual_numeric);

static void BM_simulate_batch(benchmark::State& state) {
    RngStream stream(1);
    for (auto _ : state) {
        benchmark::DoNotOptimize(simulate_batch(1.0, 0.5, 3, stream));
    }
}
BENCHMARK(BM_simulate_batch);

static void BM_gibbs_chain(benchmark::State& state) {
    const SampleBatch batch = SampleBatch::from_values({0.7, 1.4, 0.9});
    GibbsConfig cfg;
    cfg.burn_in = 500;
    cfg.n_draws = 2000;
    std::uint64_t seed = 0;
    for (auto _ : state) {
        RngStream stream(seed++);
        benchmark::DoNotOptimize(run_chain(batch, cfg, stream));
    }
}
BENCHMARK(BM_gibbs_chain);

static void BM_log_likelihood(benchmark::State& state) {
    const std::vector<double> ts{0.5, 1.0, 1.5};
    double theta = 0.01;
    for (auto _ : state) {
        benchmark::DoNotOptimize(log_likelihood(ts, theta, 0.5));
        theta *= 1.01;
        if (theta > 100.0) theta = 0.01;
    }
}
BENCHMARK(BM_log_likelihood);

static void BM_ml_estimate(benchmark::State& state) {
    RngStream stream(7);
    const SampleBatch batch = simulate_batch(1.0, 0.5, 3, stream);
    const MleConfig cfg = MleConfig::scaled_to(batch.y_bar, 0.5);
    for (auto _ : state) {
        benchmark::DoNotOptimize(ml_estimate(batch, cfg));
    }
}
BENCHMARK(BM_ml_estimate);

static void BM_experiment_replicate(benchmark::State& state) {
    SimConfig cfg;
    cfg.replicates = static_cast<int>(state.range(0));
    GibbsConfig gibbs;
    for (auto _ : state) {
        benchmark::DoNotOptimize(run_experiment(cfg, gibbs, MleConfig{}));
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_experiment_replicate)->Arg(10)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
