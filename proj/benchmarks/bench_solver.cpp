#include <benchmark/benchmark.h>

#include "vpent/fractional.hpp"
#include "vpent/graph.hpp"
#include "vpent/graphon.hpp"
#include "vpent/solver.hpp"

namespace {

vpent::FiniteGraph cycle_graph(int len) {
    std::vector<std::string> vs;
    for (int i = 0; i < len; ++i) vs.push_back("x" + std::to_string(i));
    std::vector<std::pair<std::string, std::string>> es;
    for (int i = 0; i < len; ++i) es.emplace_back(vs[i], vs[(i + 1) % len]);
    auto pi = vpent::Distribution::uniform(vs);
    return vpent::FiniteGraph(std::move(vs), std::move(es), std::move(pi));
}

void bm_solve_cycle(benchmark::State& state) {
    auto system = vpent::maximal_independent_sets(cycle_graph(static_cast<int>(state.range(0))));
    vpent::SolveOptions opts;
    opts.tol = 1e-9;
    for (auto _ : state) {
        auto cert = vpent::solve_entropy(system, system.universe(), opts);
        benchmark::DoNotOptimize(cert.value);
    }
}
BENCHMARK(bm_solve_cycle)->Arg(5)->Arg(9)->Arg(13);

void bm_solve_circle_quotient(benchmark::State& state) {
    auto system = vpent::quotient_system(
        vpent::discretize_circle(0.25, static_cast<int>(state.range(0))));
    vpent::SolveOptions opts;
    opts.tol = 1e-8;
    for (auto _ : state) {
        auto cert = vpent::solve_entropy(system, system.universe(), opts);
        benchmark::DoNotOptimize(cert.value);
    }
}
BENCHMARK(bm_solve_circle_quotient)->Arg(50)->Arg(100)->Arg(200);

void bm_frac_chromatic_cycle(benchmark::State& state) {
    auto system = vpent::maximal_independent_sets(cycle_graph(static_cast<int>(state.range(0))));
    for (auto _ : state) {
        auto r = vpent::frac_chromatic(system);
        benchmark::DoNotOptimize(r.objective);
    }
}
BENCHMARK(bm_frac_chromatic_cycle)->Arg(7)->Arg(11)->Arg(15);

}  // namespace
