#pragma once

#include <string>
#include <utility>
#include <vector>

#include "vpent/distribution.hpp"
#include "vpent/graph.hpp"
#include "vpent/rng.hpp"

namespace helpers {

inline vpent::FiniteGraph cycle_graph(int len) {
    std::vector<std::string> vs;
    for (int i = 0; i < len; ++i) vs.push_back("x" + std::to_string(i));
    std::vector<std::pair<std::string, std::string>> es;
    for (int i = 0; i < len; ++i) es.emplace_back(vs[i], vs[(i + 1) % len]);
    auto pi = vpent::Distribution::uniform(vs);
    return vpent::FiniteGraph(std::move(vs), std::move(es), std::move(pi));
}

inline vpent::FiniteGraph complete_graph(int n) {
    std::vector<std::string> vs;
    for (int i = 0; i < n; ++i) vs.push_back("v" + std::to_string(i));
    std::vector<std::pair<std::string, std::string>> es;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) es.emplace_back(vs[i], vs[j]);
    auto pi = vpent::Distribution::uniform(vs);
    return vpent::FiniteGraph(std::move(vs), std::move(es), std::move(pi));
}

inline std::vector<double> random_simplex_point(int n, vpent::Rng& rng) {
    std::vector<double> p(n);
    double total = 0.0;
    for (int i = 0; i < n; ++i) {
        p[i] = 0.05 + rng.uniform();
        total += p[i];
    }
    double acc = 0.0;
    for (int i = 0; i + 1 < n; ++i) {
        p[i] /= total;
        acc += p[i];
    }
    p[n - 1] = 1.0 - acc;
    return p;
}

inline vpent::FiniteGraph random_graph(int n, double edge_prob, vpent::Rng& rng,
                                       bool random_pi = false) {
    std::vector<std::string> vs;
    for (int i = 0; i < n; ++i) vs.push_back("v" + std::to_string(i));
    std::vector<std::pair<std::string, std::string>> es;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (rng.uniform() < edge_prob) es.emplace_back(vs[i], vs[j]);
    if (!random_pi) {
        auto pi = vpent::Distribution::uniform(vs);
        return vpent::FiniteGraph(std::move(vs), std::move(es), std::move(pi));
    }
    auto masses = random_simplex_point(n, rng);
    std::vector<vpent::Atom> atoms;
    for (int i = 0; i < n; ++i) atoms.push_back({vs[i], masses[i]});
    return vpent::FiniteGraph(std::move(vs), std::move(es),
                              vpent::Distribution(std::move(atoms)));
}

}  // namespace helpers
