#include "treepack/tree.hpp"

#include <algorithm>
#include <deque>
#include <string>

namespace treepack {

RootedTree RootedTree::from_parents(std::vector<int> parents, int root) {
    const int n = static_cast<int>(parents.size());
    if (n == 0) throw TreeError("tree must have at least one vertex");
    if (root < 0 || root >= n) throw TreeError("root " + std::to_string(root) + " out of range");
    if (parents[root] != kNoParent) throw TreeError("root must have parent -1");

    RootedTree t;
    t.root_ = root;
    t.children_.assign(n, {});
    for (int v = 0; v < n; ++v) {
        const int p = parents[v];
        if (v == root) continue;
        if (p == kNoParent) throw TreeError("multiple roots: vertex " + std::to_string(v) + " has no parent");
        if (p < 0 || p >= n) throw TreeError("parent of " + std::to_string(v) + " out of range");
        if (p == v) throw TreeError("cycle detected at vertex " + std::to_string(v));
        t.children_[p].push_back(v);
    }
    t.parent_ = std::move(parents);

    t.depth_.assign(n, -1);
    t.order_.reserve(n);
    t.depth_[root] = 0;
    t.order_.push_back(root);
    for (std::size_t i = 0; i < t.order_.size(); ++i) {
        const int v = t.order_[i];
        for (int c : t.children_[v]) {
            t.depth_[c] = t.depth_[v] + 1;
            t.order_.push_back(c);
        }
    }
    if (static_cast<int>(t.order_.size()) != n) {
        // Every non-root vertex has a parent, so unreachable vertices sit on a cycle.
        for (int v = 0; v < n; ++v)
            if (t.depth_[v] < 0) throw TreeError("cycle detected at vertex " + std::to_string(v));
    }
    t.even_count_ = static_cast<int>(std::count_if(t.depth_.begin(), t.depth_.end(), [](int d) { return d % 2 == 0; }));
    return t;
}

RootedTree RootedTree::from_edges(int vertex_count, std::span<const std::pair<int, int>> edges, int root) {
    if (vertex_count <= 0) throw TreeError("tree must have at least one vertex");
    if (static_cast<int>(edges.size()) != vertex_count - 1) throw TreeError("a tree on n vertices has n-1 edges");
    if (root < 0 || root >= vertex_count) throw TreeError("root out of range");
    std::vector<std::vector<int>> adj(vertex_count);
    for (auto [u, v] : edges) {
        if (u < 0 || v < 0 || u >= vertex_count || v >= vertex_count || u == v) throw TreeError("bad edge");
        adj[u].push_back(v);
        adj[v].push_back(u);
    }
    std::vector<int> parents(vertex_count, -2);
    parents[root] = kNoParent;
    std::deque<int> queue{root};
    while (!queue.empty()) {
        const int v = queue.front();
        queue.pop_front();
        std::sort(adj[v].begin(), adj[v].end());
        for (int w : adj[v]) {
            if (w == parents[v]) continue;
            if (parents[w] != -2) throw TreeError("cycle detected at vertex " + std::to_string(w));
            parents[w] = v;
            queue.push_back(w);
        }
    }
    if (std::find(parents.begin(), parents.end(), -2) != parents.end()) throw TreeError("edge list is disconnected");
    return from_parents(std::move(parents), root);
}

int RootedTree::max_degree() const {
    int best = 0;
    for (int v = 0; v < size(); ++v) best = std::max(best, degree(v));
    return best;
}

std::vector<std::pair<int, int>> RootedTree::edges() const {
    std::vector<std::pair<int, int>> out;
    out.reserve(order_.size());
    for (int v : order_)
        if (v != root_) out.emplace_back(parent_[v], v);
    return out;
}

BalancedForest::BalancedForest(std::vector<RootedTree> components, std::vector<Side> root_sides)
    : components_(std::move(components)), root_sides_(std::move(root_sides)) {
    if (components_.size() != root_sides_.size()) throw TreeError("one root side per component required");
    offsets_.reserve(components_.size());
    for (const auto& c : components_) {
        offsets_.push_back(vertex_count_);
        vertex_count_ += c.size();
    }
}

BalancedForest::BalancedForest(std::vector<RootedTree> components)
    : BalancedForest(components, std::vector<Side>(components.size(), Side::A)) {}

int BalancedForest::component_of(int global) const {
    auto it = std::upper_bound(offsets_.begin(), offsets_.end(), global);
    return static_cast<int>(it - offsets_.begin()) - 1;
}

Side BalancedForest::side(int global) const {
    const int c = component_of(global);
    const Side local = components_[c].side(global - offsets_[c]);
    return root_sides_[c] == Side::A ? local : opposite(local);
}

int BalancedForest::degree(int global) const {
    const int c = component_of(global);
    return components_[c].degree(global - offsets_[c]);
}

int BalancedForest::max_degree() const {
    int best = 0;
    for (const auto& c : components_) best = std::max(best, c.max_degree());
    return best;
}

int BalancedForest::class_size(Side s) const {
    int total = 0;
    for (std::size_t i = 0; i < components_.size(); ++i) {
        const Side local = root_sides_[i] == Side::A ? s : opposite(s);
        total += components_[i].class_size(local);
    }
    return total;
}

std::vector<std::pair<int, int>> BalancedForest::edges() const {
    std::vector<std::pair<int, int>> out;
    for (std::size_t i = 0; i < components_.size(); ++i)
        for (auto [p, c] : components_[i].edges()) out.emplace_back(p + offsets_[i], c + offsets_[i]);
    return out;
}

GuestGraph GuestGraph::from_tree(const RootedTree& t) {
    GuestGraph g;
    g.sides.resize(t.size());
    for (int v = 0; v < t.size(); ++v) g.sides[v] = t.side(v);
    g.edges = t.edges();
    return g;
}

GuestGraph GuestGraph::from_forest(const BalancedForest& f) {
    GuestGraph g;
    g.sides.resize(f.vertex_count());
    for (int v = 0; v < f.vertex_count(); ++v) g.sides[v] = f.side(v);
    g.edges = f.edges();
    return g;
}

}  // namespace treepack
