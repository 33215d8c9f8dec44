#include "vpent/graph.hpp"

#include <algorithm>
#include <bit>
#include <set>
#include <utility>

#include "vpent/errors.hpp"

namespace vpent {

namespace {

using Bits = std::vector<std::uint64_t>;

int words_for(int n) { return (n + 63) / 64; }

bool test_bit(const Bits& b, int i) { return (b[i >> 6] >> (i & 63)) & 1u; }
void set_bit(Bits& b, int i) { b[i >> 6] |= std::uint64_t(1) << (i & 63); }
void clear_bit(Bits& b, int i) { b[i >> 6] &= ~(std::uint64_t(1) << (i & 63)); }

bool any(const Bits& b) {
    for (auto w : b)
        if (w) return true;
    return false;
}

Bits and_bits(const Bits& a, const Bits& b) {
    Bits r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] & b[i];
    return r;
}

int and_popcount(const Bits& a, const Bits& b) {
    int c = 0;
    for (size_t i = 0; i < a.size(); ++i) c += std::popcount(a[i] & b[i]);
    return c;
}

void for_each_bit(const Bits& b, auto&& fn) {
    for (size_t w = 0; w < b.size(); ++w) {
        std::uint64_t word = b[w];
        while (word) {
            int bit = std::countr_zero(word);
            fn(static_cast<int>(w * 64 + bit));
            word &= word - 1;
        }
    }
}

// Bron-Kerbosch with Tomita pivoting.
void bron_kerbosch(const std::vector<Bits>& adj, Bits P, Bits X, std::vector<int>& R,
                   std::vector<std::vector<int>>& out) {
    if (!any(P) && !any(X)) {
        out.push_back(R);
        return;
    }
    // pivot: vertex of P|X with most neighbors in P
    int pivot = -1, best = -1;
    Bits PX(P.size());
    for (size_t i = 0; i < P.size(); ++i) PX[i] = P[i] | X[i];
    for_each_bit(PX, [&](int u) {
        int d = and_popcount(P, adj[u]);
        if (d > best) {
            best = d;
            pivot = u;
        }
    });
    Bits cand = P;
    for (size_t i = 0; i < cand.size(); ++i) cand[i] &= ~adj[pivot][i];
    for_each_bit(cand, [&](int v) {
        R.push_back(v);
        bron_kerbosch(adj, and_bits(P, adj[v]), and_bits(X, adj[v]), R, out);
        R.pop_back();
        clear_bit(P, v);
        set_bit(X, v);
    });
}

}  // namespace

FiniteGraph::FiniteGraph(std::vector<std::string> vertices,
                         std::vector<std::pair<std::string, std::string>> edges,
                         Distribution pi)
    : vertices_(std::move(vertices)), pi_(std::move(pi)) {
    const int n = static_cast<int>(vertices_.size());
    if (n == 0) throw input_error("graph has no vertices");
    std::set<std::string> names(vertices_.begin(), vertices_.end());
    if (static_cast<int>(names.size()) != n) throw input_error("duplicate vertex ids");
    if (pi_.size() != n) throw input_error("pi has wrong number of atoms");
    for (const auto& v : vertices_)
        if (pi_.index_of(v) < 0) throw input_error("pi is missing vertex '" + v + "'");

    adj_.assign(n, Bits(words_for(n)));
    std::set<std::pair<int, int>> seen;
    auto vertex_index = [&](const std::string& id) {
        auto it = std::find(vertices_.begin(), vertices_.end(), id);
        if (it == vertices_.end()) throw input_error("edge endpoint '" + id + "' is not a vertex");
        return static_cast<int>(it - vertices_.begin());
    };
    for (const auto& [a, b] : edges) {
        int u = vertex_index(a), v = vertex_index(b);
        if (u == v) throw input_error("loop at '" + a + "'");
        auto key = std::minmax(u, v);
        if (!seen.insert(key).second) throw input_error("duplicate edge " + a + "-" + b);
        edges_.emplace_back(key.first, key.second);
        set_bit(adj_[u], v);
        set_bit(adj_[v], u);
    }
    std::sort(edges_.begin(), edges_.end());
}

bool FiniteGraph::adjacent(int u, int v) const { return test_bit(adj_[u], v); }

namespace detail {

std::vector<std::vector<int>> max_cliques(const std::vector<Bits>& adj, int n) {
    Bits P(words_for(n)), X(words_for(n));
    for (int i = 0; i < n; ++i) set_bit(P, i);
    std::vector<int> R;
    std::vector<std::vector<int>> out;
    bron_kerbosch(adj, std::move(P), std::move(X), R, out);
    for (auto& s : out) std::sort(s.begin(), s.end());
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace detail

SetSystem maximal_independent_sets(const FiniteGraph& graph) {
    const int n = graph.order();
    if (n > 40) throw size_error("maximal independent set enumeration limited to 40 vertices");

    // maximal cliques of the complement
    std::vector<Bits> comp(n, Bits(words_for(n)));
    for (int u = 0; u < n; ++u)
        for (int v = 0; v < n; ++v)
            if (u != v && !graph.adjacent(u, v)) set_bit(comp[u], v);
    auto sets = detail::max_cliques(comp, n);

    // atoms of pi ordered as the graph's vertex list
    std::vector<Atom> atoms;
    atoms.reserve(n);
    for (const auto& v : graph.vertices()) {
        int i = graph.pi().index_of(v);
        atoms.push_back({v, graph.pi().mass(i)});
    }
    return SetSystem(Distribution(std::move(atoms)), std::move(sets),
                     SystemOrigin::graph_derived);
}

}  // namespace vpent
