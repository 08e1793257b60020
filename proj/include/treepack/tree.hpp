#pragma once

#include <span>
#include <utility>
#include <vector>

#include "treepack/graph.hpp"

namespace treepack {

class TreeError : public Error {
public:
    using Error::Error;
};

/// Rooted tree given by a parent array (parent[root] == kNoParent).
/// Vertices at even depth form the A-class, odd depth the B-class.
class RootedTree {
public:
    static constexpr int kNoParent = -1;

    RootedTree() = default;

    /// Throws TreeError on out-of-range parents, several roots, or a cycle.
    static RootedTree from_parents(std::vector<int> parents, int root);
    /// Builds from an undirected edge list over `vertex_count` vertices.
    static RootedTree from_edges(int vertex_count, std::span<const std::pair<int, int>> edges, int root);

    int size() const { return static_cast<int>(parent_.size()); }
    int edge_count() const { return size() - 1; }
    int root() const { return root_; }
    int parent(int v) const { return parent_[v]; }
    const std::vector<int>& parents() const { return parent_; }
    const std::vector<int>& children(int v) const { return children_[v]; }
    int depth(int v) const { return depth_[v]; }
    Side side(int v) const { return depth_[v] % 2 == 0 ? Side::A : Side::B; }
    int degree(int v) const {
        return static_cast<int>(children_[v].size()) + (parent_[v] == kNoParent ? 0 : 1);
    }
    int max_degree() const;
    int class_size(Side s) const { return s == Side::A ? even_count_ : size() - even_count_; }
    bool balanced() const { return 2 * even_count_ == size(); }

    /// Vertices in breadth-first order from the root (children in index order).
    const std::vector<int>& bfs_order() const { return order_; }
    /// (parent, child) pairs in BFS order.
    std::vector<std::pair<int, int>> edges() const;

    friend bool operator==(const RootedTree& x, const RootedTree& y) {
        return x.root_ == y.root_ && x.parent_ == y.parent_;
    }

private:
    int root_ = 0;
    int even_count_ = 0;
    std::vector<int> parent_;
    std::vector<std::vector<int>> children_;
    std::vector<int> depth_;
    std::vector<int> order_;
};

/// Vertex-disjoint union of rooted trees with a global 2-coloring. Component i
/// has its root on side root_side[i]; global vertex ids are assigned by
/// concatenating components in order.
class BalancedForest {
public:
    BalancedForest() = default;
    BalancedForest(std::vector<RootedTree> components, std::vector<Side> root_sides);
    explicit BalancedForest(std::vector<RootedTree> components);

    const std::vector<RootedTree>& components() const { return components_; }
    Side root_side(int component) const { return root_sides_[component]; }
    int component_count() const { return static_cast<int>(components_.size()); }
    int vertex_count() const { return vertex_count_; }
    int offset(int component) const { return offsets_[component]; }
    int component_of(int global) const;
    Side side(int global) const;
    int degree(int global) const;
    int max_degree() const;
    int class_size(Side s) const;
    bool balanced() const { return class_size(Side::A) == class_size(Side::B); }
    /// Edges as global (u, v) pairs, parent first.
    std::vector<std::pair<int, int>> edges() const;

private:
    std::vector<RootedTree> components_;
    std::vector<Side> root_sides_;
    std::vector<int> offsets_;
    int vertex_count_ = 0;
};

/// Class-labelled guest graph shared by the verifier, the search oracle and
/// the packer.
struct GuestGraph {
    std::vector<Side> sides;
    std::vector<std::pair<int, int>> edges;

    int vertex_count() const { return static_cast<int>(sides.size()); }
    int edge_count() const { return static_cast<int>(edges.size()); }

    static GuestGraph from_tree(const RootedTree& t);
    static GuestGraph from_forest(const BalancedForest& f);

    friend bool operator==(const GuestGraph&, const GuestGraph&) = default;
};

}  // namespace treepack
