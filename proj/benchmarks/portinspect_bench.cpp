#include <benchmark/benchmark.h>

#include "portinspect/evaluation.hpp"
#include "portinspect/sequencing.hpp"
#include "portinspect/simulation.hpp"
#include "portinspect/solvers.hpp"

namespace {

using namespace portinspect;

const Policy kRow2{{1, 0, 2}, {0.0, 0.85, 0.0}};

void BM_EvaluatePolicy(benchmark::State& state) {
    const SystemModel m = reference_port_model();
    for (auto _ : state) benchmark::DoNotOptimize(evaluate_policy(m, kRow2));
}
BENCHMARK(BM_EvaluatePolicy);

void BM_EvaluatePolicySeries(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    SystemModel m;
    for (std::size_t i = 0; i < n; ++i) m.stations.push_back(Station{0.2, 0.25, 1.0, 20.0, -3.0});
    m.prior = 0.01;
    m.cost_false_accept = 1000;
    m.cost_false_reject = 50;
    m.structure = BooleanStructure::series(n);
    Policy p;
    for (std::size_t i = 0; i < n; ++i) {
        p.sequence.push_back(i);
        p.thresholds.push_back(0.5);
    }
    for (auto _ : state) benchmark::DoNotOptimize(evaluate_policy(m, p));
}
BENCHMARK(BM_EvaluatePolicySeries)->Arg(3)->Arg(6)->Arg(10);

void BM_CollapsedFitness(benchmark::State& state) {
    const SystemModel m = reference_port_model();
    const std::vector<double> t{0.1, 0.6, 0.2};
    const WeightPair w(0.3, 0.7);
    for (auto _ : state) benchmark::DoNotOptimize(collapsed_fitness(m, t, w));
}
BENCHMARK(BM_CollapsedFitness);

void BM_GridSweep(benchmark::State& state) {
    const SystemModel m = reference_port_model();
    const auto w = weight_range(0.0, 0.1, 1.0);
    for (auto _ : state) benchmark::DoNotOptimize(weight_sweep(m, GridParams{0.05}, w));
}
BENCHMARK(BM_GridSweep)->Unit(benchmark::kMillisecond);

void BM_GaSingleWeight(benchmark::State& state) {
    const SystemModel m = reference_port_model();
    const std::vector<WeightPair> w{WeightPair(0.3, 0.7)};
    for (auto _ : state) benchmark::DoNotOptimize(weight_sweep(m, GAParams{}, w));
}
BENCHMARK(BM_GaSingleWeight)->Unit(benchmark::kMillisecond);

void BM_Simulate(benchmark::State& state) {
    const SystemModel m = reference_port_model();
    const auto samples = static_cast<std::size_t>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(simulate(m, kRow2, samples, 1));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Simulate)->Arg(100000)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
