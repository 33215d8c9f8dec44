#include <benchmark/benchmark.h>

#include "vpent/cover.hpp"
#include "vpent/graph.hpp"
#include "vpent/rng.hpp"

namespace {

void bm_maximal_independent_sets(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    vpent::Rng rng(12345);
    std::vector<std::string> vs;
    for (int i = 0; i < n; ++i) vs.push_back("v" + std::to_string(i));
    std::vector<std::pair<std::string, std::string>> es;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (rng.uniform() < 0.3) es.emplace_back(vs[i], vs[j]);
    vpent::FiniteGraph g(vs, es, vpent::Distribution::uniform(vs));
    for (auto _ : state) {
        auto system = vpent::maximal_independent_sets(g);
        benchmark::DoNotOptimize(system.family_size());
    }
}
BENCHMARK(bm_maximal_independent_sets)->Arg(16)->Arg(24)->Arg(32);

void bm_exact_min_cover_k2(benchmark::State& state) {
    std::vector<std::string> vs = {"a", "b"};
    vpent::FiniteGraph g(vs, {{"a", "b"}}, vpent::Distribution::uniform(vs));
    auto system = vpent::maximal_independent_sets(g);
    const int ell = static_cast<int>(state.range(0));
    for (auto _ : state) {
        auto report = vpent::exact_min_cover(system, ell, 0.4);
        benchmark::DoNotOptimize(report.boxes_used);
    }
}
BENCHMARK(bm_exact_min_cover_k2)->Arg(4)->Arg(6);

}  // namespace
