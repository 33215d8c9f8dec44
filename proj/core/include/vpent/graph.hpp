#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "vpent/distribution.hpp"
#include "vpent/set_system.hpp"

namespace vpent {

// Simple finite graph with a vertex distribution. No loops, no multi-edges;
// pi's symbols are exactly the vertices.
class FiniteGraph {
public:
    FiniteGraph(std::vector<std::string> vertices,
                std::vector<std::pair<std::string, std::string>> edges,
                Distribution pi);

    int order() const { return static_cast<int>(vertices_.size()); }
    const std::vector<std::string>& vertices() const { return vertices_; }
    const std::vector<std::pair<int, int>>& edges() const { return edges_; }
    const Distribution& pi() const { return pi_; }
    bool adjacent(int u, int v) const;

private:
    std::vector<std::string> vertices_;
    std::vector<std::pair<int, int>> edges_;
    std::vector<std::vector<std::uint64_t>> adj_;  // bitset rows
    Distribution pi_;
};

// All inclusion-maximal independent sets of the graph as a SetSystem over
// graph.pi, sorted lexicographically by atom indices. Pivoting clique
// enumeration on the complement graph. Limited to 40 vertices.
SetSystem maximal_independent_sets(const FiniteGraph& graph);

namespace detail {

// Maximal cliques of the graph given by bitset adjacency rows (no size cap;
// callers with structured inputs, e.g. graphon quotients, rely on this).
std::vector<std::vector<int>> max_cliques(const std::vector<std::vector<std::uint64_t>>& adj,
                                          int n);

}  // namespace detail

}  // namespace vpent
