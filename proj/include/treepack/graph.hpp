#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace treepack {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class GraphError : public Error {
public:
    using Error::Error;
};

enum class Side : std::uint8_t { A, B };

inline Side opposite(Side s) { return s == Side::A ? Side::B : Side::A; }
inline char side_char(Side s) { return s == Side::A ? 'A' : 'B'; }

/// Host edge in canonical orientation: `a` indexes side A, `b` side B.
struct Edge {
    int a = 0;
    int b = 0;
    friend bool operator==(const Edge&, const Edge&) = default;
    friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// Exact ratio num/den. Not normalized; comparisons cross-multiply.
struct Fraction {
    std::int64_t num = 0;
    std::int64_t den = 1;

    double value() const { return static_cast<double>(num) / static_cast<double>(den); }
    friend bool operator==(const Fraction& x, const Fraction& y) { return x.num * y.den == y.num * x.den; }
    friend bool operator<(const Fraction& x, const Fraction& y) { return x.num * y.den < y.num * x.den; }
};

/// Bipartite graph with sides A (size_a) and B (size_b), stored as a dense
/// adjacency matrix. Values are immutable once built; edge removal returns a
/// new graph.
class BipartiteGraph {
public:
    BipartiteGraph() = default;

    static BipartiteGraph complete(int size_a, int size_b);
    static BipartiteGraph empty(int size_a, int size_b);
    /// Throws GraphError on an out-of-range index or a duplicate edge.
    static BipartiteGraph from_edges(int size_a, int size_b, std::span<const Edge> edges);
    /// G(size_a, size_b, p) with a seeded generator.
    static BipartiteGraph random(int size_a, int size_b, double p, std::uint64_t seed);

    int size_a() const { return size_a_; }
    int size_b() const { return size_b_; }
    int side_size(Side s) const { return s == Side::A ? size_a_ : size_b_; }
    std::int64_t edge_count() const { return edge_count_; }

    bool has_edge(int a, int b) const {
        return adj_[static_cast<std::size_t>(a) * static_cast<std::size_t>(size_b_) + static_cast<std::size_t>(b)] != 0;
    }
    /// Adjacency between a vertex on side `s` and a vertex on the other side.
    bool adjacent(Side s, int v, int w) const { return s == Side::A ? has_edge(v, w) : has_edge(w, v); }

    int degree(Side s, int v) const { return s == Side::A ? deg_a_[v] : deg_b_[v]; }
    int min_degree() const;
    int max_degree() const;
    std::vector<int> neighbors(Side s, int v) const;
    std::vector<Edge> edges() const;

    /// Returns a copy without the given edges. Throws GraphError if any is absent
    /// or listed twice.
    BipartiteGraph without_edges(std::span<const Edge> removed) const;

    friend bool operator==(const BipartiteGraph&, const BipartiteGraph&) = default;

private:
    BipartiteGraph(int size_a, int size_b);
    void set_edge(int a, int b);

    int size_a_ = 0;
    int size_b_ = 0;
    std::int64_t edge_count_ = 0;
    std::vector<std::uint8_t> adj_;
    std::vector<int> deg_a_;
    std::vector<int> deg_b_;
};

/// e(S,T) / (|S||T|) for S on side A and T on side B. Throws on empty subsets.
Fraction density(const BipartiteGraph& g, std::span<const int> subset_a, std::span<const int> subset_b);

/// Number of edges between `v` (on side `s`) and `targets` on the other side.
int degree_into(const BipartiteGraph& g, Side s, int v, std::span<const int> targets);

}  // namespace treepack
