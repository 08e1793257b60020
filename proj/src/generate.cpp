#include "treepack/generate.hpp"

#include <algorithm>
#include <queue>
#include <random>
#include <string>

namespace treepack {

RootedTree gen_tree(int per_class, int max_degree, std::uint64_t seed) {
    if (per_class < 1) throw TreeError("per_class must be positive");
    if (per_class >= 2 && max_degree < 2) {
        throw TreeError("a balanced tree on " + std::to_string(2 * per_class) + " vertices needs max degree >= 2");
    }
    if (max_degree < 1) throw TreeError("max degree must be positive");
    std::mt19937_64 rng(seed);
    const int n = 2 * per_class;
    std::vector<int> parent(n, -1), degree(n, 0);
    std::vector<int> open[2];  // vertices below the cap, per class
    open[0].push_back(0);
    for (int v = 1; v < n; ++v) {
        const int cls = v % 2;  // 1 = B, 0 = A
        auto& pool = open[1 - cls];
        std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
        const std::size_t k = pick(rng);
        const int p = pool[k];
        parent[v] = p;
        ++degree[v];
        if (++degree[p] >= max_degree) {
            pool[k] = pool.back();
            pool.pop_back();
        }
        if (degree[v] < max_degree) open[cls].push_back(v);
    }
    return RootedTree::from_parents(std::move(parent), 0);
}

BalancedForest gen_forest(int per_class, int components, int max_degree, std::uint64_t seed) {
    if (components < 1 || components > per_class) throw TreeError("component count must lie in [1, per_class]");
    std::mt19937_64 rng(seed);
    // Random composition of per_class into `components` positive parts.
    std::vector<int> cuts(per_class - 1);
    for (int i = 0; i < per_class - 1; ++i) cuts[i] = i + 1;
    std::shuffle(cuts.begin(), cuts.end(), rng);
    cuts.resize(components - 1);
    std::sort(cuts.begin(), cuts.end());
    cuts.push_back(per_class);
    std::vector<RootedTree> trees;
    int prev = 0;
    for (int cut : cuts) {
        trees.push_back(gen_tree(cut - prev, max_degree, rng()));
        prev = cut;
    }
    return BalancedForest(std::move(trees));
}

RootedTree random_tree(int vertices, std::uint64_t seed) {
    if (vertices < 1) throw TreeError("tree needs a vertex");
    if (vertices == 1) return RootedTree::from_parents({-1}, 0);
    std::mt19937_64 rng(seed);
    std::vector<std::pair<int, int>> edges;
    if (vertices == 2) {
        edges.emplace_back(0, 1);
    } else {
        std::uniform_int_distribution<int> pick(0, vertices - 1);
        std::vector<int> code(vertices - 2);
        for (int& x : code) x = pick(rng);
        std::vector<int> degree(vertices, 1);
        for (int x : code) ++degree[x];
        std::priority_queue<int, std::vector<int>, std::greater<>> leaves;
        for (int v = 0; v < vertices; ++v)
            if (degree[v] == 1) leaves.push(v);
        for (int x : code) {
            const int leaf = leaves.top();
            leaves.pop();
            edges.emplace_back(leaf, x);
            if (--degree[x] == 1) leaves.push(x);
        }
        const int u = leaves.top();
        leaves.pop();
        edges.emplace_back(u, leaves.top());
    }
    return RootedTree::from_edges(vertices, edges, 0);
}

}  // namespace treepack
