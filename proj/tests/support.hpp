#pragma once

// Independent reference computations used by the tests.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <numeric>
#include <random>
#include <set>
#include <utility>
#include <vector>

#include "treepack/assignment.hpp"
#include "treepack/graph.hpp"
#include "treepack/regularity.hpp"
#include "treepack/tree.hpp"
#include "treepack/verify.hpp"

namespace testsupport {

using namespace treepack;

inline std::int64_t count_edges(const BipartiteGraph& g, const std::vector<int>& s, const std::vector<int>& t) {
    std::int64_t e = 0;
    for (int a : s)
        for (int b : t)
            if (g.has_edge(a, b)) ++e;
    return e;
}

inline RootedTree path_tree(int vertices) {
    std::vector<int> parent(vertices);
    for (int v = 0; v < vertices; ++v) parent[v] = v - 1;
    return RootedTree::from_parents(parent, 0);
}

inline RootedTree star_tree(int leaves) {
    std::vector<int> parent(leaves + 1, 0);
    parent[0] = -1;
    return RootedTree::from_parents(parent, 0);
}

inline RootedTree complete_binary_tree(int vertices) {
    std::vector<int> parent(vertices);
    for (int v = 0; v < vertices; ++v) parent[v] = v == 0 ? -1 : (v - 1) / 2;
    return RootedTree::from_parents(parent, 0);
}

// Recomputes the validity of an embedding from scratch with a plain edge scan.
inline bool naive_embedding_ok(const BipartiteGraph& host, const GuestGraph& guest, const Embedding& e) {
    if (e.map.size() != guest.sides.size()) return false;
    std::set<std::pair<int, int>> images;
    for (std::size_t v = 0; v < e.map.size(); ++v) {
        const HostVertex h = e.map[v];
        if (h.side != guest.sides[v]) return false;
        if (h.index < 0 || h.index >= host.side_size(h.side)) return false;
        if (!images.insert({static_cast<int>(h.side), h.index}).second) return false;
    }
    for (auto [u, v] : guest.edges) {
        const int a = e.map[u].side == Side::A ? e.map[u].index : e.map[v].index;
        const int b = e.map[u].side == Side::A ? e.map[v].index : e.map[u].index;
        bool found = false;
        for (const Edge& h : host.edges()) found = found || (h.a == a && h.b == b);
        if (!found) return false;
    }
    return true;
}

inline bool naive_packing_ok(const BipartiteGraph& host, const Packing& p) {
    std::set<std::pair<int, int>> used;
    for (const auto& pg : p) {
        if (!naive_embedding_ok(host, pg.guest, pg.embedding)) return false;
        for (const Edge& e : pg.embedding.host_edges(pg.guest))
            if (!used.insert({e.a, e.b}).second) return false;
    }
    return true;
}

// Components of T - S by union-find over non-seed edges.
inline std::vector<std::vector<int>> components_without(const RootedTree& t, const std::vector<int>& seeds) {
    const int n = t.size();
    std::vector<char> seed(n, 0);
    for (int s : seeds) seed[s] = 1;
    std::vector<int> parent(n);
    for (int v = 0; v < n; ++v) parent[v] = v;
    auto find = [&](int v) {
        while (parent[v] != v) v = parent[v] = parent[parent[v]];
        return v;
    };
    for (int v = 0; v < n; ++v) {
        const int p = t.parent(v);
        if (p >= 0 && !seed[v] && !seed[p]) parent[find(v)] = find(p);
    }
    std::vector<std::vector<int>> by_root(n);
    for (int v = 0; v < n; ++v)
        if (!seed[v]) by_root[find(v)].push_back(v);
    std::vector<std::vector<int>> out;
    for (auto& c : by_root)
        if (!c.empty()) out.push_back(c);
    std::sort(out.begin(), out.end());
    return out;
}


// Largest |d(X,Y) - d(X',Y')| over all eps-significant X' of X and Y' of Y.
// Enumerates every X'; for each size of Y' the extreme densities come from the
// sorted column counts.
inline double exhaustive_max_deviation(const BipartiteGraph& g, const std::vector<int>& x, const std::vector<int>& y,
                                       double eps) {
    const int nx = static_cast<int>(x.size()), ny = static_cast<int>(y.size());
    auto sig = [&](int size) { return std::max(1, static_cast<int>(std::ceil(eps * size - 1e-12))); };
    const double d = static_cast<double>(count_edges(g, x, y)) / (nx * ny);
    double worst = 0.0;
    std::vector<int> cols(ny);
    for (std::uint32_t mask = 1; mask < (1u << nx); ++mask) {
        const int size = __builtin_popcount(mask);
        if (size < sig(nx)) continue;
        for (int j = 0; j < ny; ++j) {
            cols[j] = 0;
            for (int i = 0; i < nx; ++i)
                if ((mask >> i & 1u) && g.has_edge(x[i], y[j])) ++cols[j];
        }
        std::sort(cols.begin(), cols.end());
        int low = 0, high = 0;
        for (int k = 1; k <= ny; ++k) {
            low += cols[k - 1];
            high += cols[ny - k];
            if (k < sig(ny)) continue;
            const double denom = static_cast<double>(size) * k;
            worst = std::max({worst, d - low / denom, high / denom - d});
        }
    }
    return worst;
}


inline std::vector<int> iota_vec(int n, int from = 0) {
    std::vector<int> v(n);
    std::iota(v.begin(), v.end(), from);
    return v;
}

// X_1 joined to Y_1 and X_2 joined to Y_2, each half of size h, labels shuffled.
inline BipartiteGraph half_split(int h, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<int> pa = iota_vec(2 * h), pb = iota_vec(2 * h);
    std::shuffle(pa.begin(), pa.end(), rng);
    std::shuffle(pb.begin(), pb.end(), rng);
    std::vector<Edge> edges;
    for (int i = 0; i < 2 * h; ++i)
        for (int j = 0; j < 2 * h; ++j)
            if ((i < h) == (j < h)) edges.push_back({pa[i], pb[j]});
    return BipartiteGraph::from_edges(2 * h, 2 * h, edges);
}


// Masks of X-vertices atypical to some eps-significant subset of y.
inline std::set<std::uint32_t> atypical_masks(const BipartiteGraph& g, const std::vector<int>& x, const std::vector<int>& y,
                                       double eps) {
    const double base = density(g, x, y).value();
    const int sig = significant_size(static_cast<int>(y.size()), eps);
    std::set<std::uint32_t> out;
    for (std::uint32_t mask = 1; mask < (1u << y.size()); ++mask) {
        if (__builtin_popcount(mask) < sig) continue;
        std::vector<int> sub;
        for (std::size_t j = 0; j < y.size(); ++j)
            if (mask >> j & 1u) sub.push_back(y[j]);
        std::uint32_t bad = 0;
        for (std::size_t i = 0; i < x.size(); ++i)
            if (!typical_to(g, Side::A, x[i], sub, base, eps)) bad |= 1u << i;
        out.insert(bad);
    }
    return out;
}


// Plain exhaustive search over all group labellings.
inline bool feasible_exhaustive(const std::vector<DemandPair>& pairs, int s, double cap) {
    std::vector<std::int64_t> x(s), y(s);
    std::function<bool(std::size_t)> go = [&](std::size_t i) {
        if (i == pairs.size()) return true;
        bool tried_empty = false;  // empty groups are interchangeable
        for (int g = 0; g < s; ++g) {
            if (x[g] == 0 && y[g] == 0) {
                if (tried_empty) continue;
                tried_empty = true;
            }
            if (x[g] + pairs[i].x > cap + 1e-9 || y[g] + pairs[i].y > cap + 1e-9) continue;
            x[g] += pairs[i].x;
            y[g] += pairs[i].y;
            const bool ok = go(i + 1);
            x[g] -= pairs[i].x;
            y[g] -= pairs[i].y;
            if (ok) return true;
        }
        return false;
    };
    return go(0);
}

}  // namespace testsupport
