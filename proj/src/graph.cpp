#include "treepack/graph.hpp"

#include <algorithm>
#include <random>

namespace treepack {

BipartiteGraph::BipartiteGraph(int size_a, int size_b) : size_a_(size_a), size_b_(size_b) {
    if (size_a < 0 || size_b < 0) throw GraphError("negative side size");
    adj_.assign(static_cast<std::size_t>(size_a) * static_cast<std::size_t>(size_b), 0);
    deg_a_.assign(static_cast<std::size_t>(size_a), 0);
    deg_b_.assign(static_cast<std::size_t>(size_b), 0);
}

void BipartiteGraph::set_edge(int a, int b) {
    adj_[static_cast<std::size_t>(a) * static_cast<std::size_t>(size_b_) + static_cast<std::size_t>(b)] = 1;
    ++deg_a_[a];
    ++deg_b_[b];
    ++edge_count_;
}

BipartiteGraph BipartiteGraph::complete(int size_a, int size_b) {
    BipartiteGraph g(size_a, size_b);
    std::fill(g.adj_.begin(), g.adj_.end(), 1);
    std::fill(g.deg_a_.begin(), g.deg_a_.end(), size_b);
    std::fill(g.deg_b_.begin(), g.deg_b_.end(), size_a);
    g.edge_count_ = static_cast<std::int64_t>(size_a) * size_b;
    return g;
}

BipartiteGraph BipartiteGraph::empty(int size_a, int size_b) { return BipartiteGraph(size_a, size_b); }

BipartiteGraph BipartiteGraph::from_edges(int size_a, int size_b, std::span<const Edge> edges) {
    BipartiteGraph g(size_a, size_b);
    for (const Edge& e : edges) {
        if (e.a < 0 || e.a >= size_a || e.b < 0 || e.b >= size_b) {
            throw GraphError("edge (" + std::to_string(e.a) + "," + std::to_string(e.b) + ") out of range");
        }
        if (g.has_edge(e.a, e.b)) {
            throw GraphError("duplicate edge (" + std::to_string(e.a) + "," + std::to_string(e.b) + ")");
        }
        g.set_edge(e.a, e.b);
    }
    return g;
}

BipartiteGraph BipartiteGraph::random(int size_a, int size_b, double p, std::uint64_t seed) {
    BipartiteGraph g(size_a, size_b);
    std::mt19937_64 rng(seed);
    std::bernoulli_distribution coin(std::clamp(p, 0.0, 1.0));
    for (int a = 0; a < size_a; ++a)
        for (int b = 0; b < size_b; ++b)
            if (coin(rng)) g.set_edge(a, b);
    return g;
}

int BipartiteGraph::min_degree() const {
    int best = -1;
    for (int d : deg_a_) best = best < 0 ? d : std::min(best, d);
    for (int d : deg_b_) best = best < 0 ? d : std::min(best, d);
    return std::max(best, 0);
}

int BipartiteGraph::max_degree() const {
    int best = 0;
    for (int d : deg_a_) best = std::max(best, d);
    for (int d : deg_b_) best = std::max(best, d);
    return best;
}

std::vector<int> BipartiteGraph::neighbors(Side s, int v) const {
    std::vector<int> out;
    const int other = side_size(opposite(s));
    for (int w = 0; w < other; ++w)
        if (adjacent(s, v, w)) out.push_back(w);
    return out;
}

std::vector<Edge> BipartiteGraph::edges() const {
    std::vector<Edge> out;
    out.reserve(static_cast<std::size_t>(edge_count_));
    for (int a = 0; a < size_a_; ++a)
        for (int b = 0; b < size_b_; ++b)
            if (has_edge(a, b)) out.push_back({a, b});
    return out;
}

BipartiteGraph BipartiteGraph::without_edges(std::span<const Edge> removed) const {
    BipartiteGraph g = *this;
    for (const Edge& e : removed) {
        if (e.a < 0 || e.a >= size_a_ || e.b < 0 || e.b >= size_b_ || !g.has_edge(e.a, e.b)) {
            throw GraphError("edge (" + std::to_string(e.a) + "," + std::to_string(e.b) + ") not present in host");
        }
        g.adj_[static_cast<std::size_t>(e.a) * static_cast<std::size_t>(size_b_) + static_cast<std::size_t>(e.b)] = 0;
        --g.deg_a_[e.a];
        --g.deg_b_[e.b];
        --g.edge_count_;
    }
    return g;
}

Fraction density(const BipartiteGraph& g, std::span<const int> subset_a, std::span<const int> subset_b) {
    if (subset_a.empty() || subset_b.empty()) throw GraphError("density of an empty subset");
    std::int64_t count = 0;
    for (int a : subset_a)
        for (int b : subset_b)
            count += g.has_edge(a, b) ? 1 : 0;
    return {count, static_cast<std::int64_t>(subset_a.size()) * static_cast<std::int64_t>(subset_b.size())};
}

int degree_into(const BipartiteGraph& g, Side s, int v, std::span<const int> targets) {
    int count = 0;
    for (int w : targets) count += g.adjacent(s, v, w) ? 1 : 0;
    return count;
}

}  // namespace treepack
