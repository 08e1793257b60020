#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <functional>
#include <set>

#include "support.hpp"
#include "treepack/generate.hpp"
#include "treepack/packer.hpp"

using namespace treepack;
using namespace testsupport;

namespace {

PackError::Kind kind_of(const std::function<void()>& f) {
    try {
        f();
    } catch (const PackError& e) {
        return e.kind();
    }
    FAIL("expected a PackError");
    return PackError::Kind::Precondition;
}

std::vector<int> sorted_degrees(const RootedTree& t, Side s) {
    std::vector<int> d;
    for (int v = 0; v < t.size(); ++v)
        if (t.side(v) == s) d.push_back(t.degree(v));
    std::sort(d.rbegin(), d.rend());
    return d;
}

void check_extraction(const RootedTree& t, int k, const HubExtraction& h) {
    CHECK(h.hubs_a.size() == static_cast<std::size_t>(k));
    CHECK(h.hubs_b.size() == static_cast<std::size_t>(k));
    CHECK(h.forest.balanced() == t.balanced());
    CHECK(h.forest.vertex_count() == t.size() - 2 * k);
    // Forest edges plus hub edges give back the tree's edges.
    std::set<std::pair<int, int>> edges;
    for (auto [u, v] : h.forest.edges()) {
        const int a = h.forest_to_tree[u], b = h.forest_to_tree[v];
        edges.insert({std::min(a, b), std::max(a, b)});
        CHECK(h.forest.side(u) == t.side(a));
    }
    for (auto [p, c] : h.hub_edges) CHECK(edges.insert({std::min(p, c), std::max(p, c)}).second);
    CHECK(edges.size() == static_cast<std::size_t>(t.edge_count()));
    for (Side s : {Side::A, Side::B}) {
        const auto deg = sorted_degrees(t, s);
        const auto& hubs = s == Side::A ? h.hubs_a : h.hubs_b;
        for (int v : hubs) CHECK(t.degree(v) >= deg[k - 1]);
        if (k > 0 && static_cast<int>(deg.size()) > k) CHECK(deg[k] <= 2.0 * t.edge_count() / k);
    }
}

}  // namespace

TEST_CASE("extract_hubs examples") {
    const auto t = gen_tree(10, 3, 1);
    const auto h0 = extract_hubs(t, 0);
    CHECK(h0.hubs_a.empty());
    CHECK(h0.forest.component_count() == 1);
    CHECK(h0.forest.components().front().size() == t.size());
    check_extraction(t, 0, h0);
    CHECK(h0.hub_edges.empty());

    // D_{5,5}: A-center 0, B-center 1.
    std::vector<int> parent(10, 0);
    parent[0] = -1;
    for (int v = 6; v < 10; ++v) parent[v] = 1;
    const auto ds = RootedTree::from_parents(parent, 0);
    const auto h1 = extract_hubs(ds, 1);
    CHECK(h1.hubs_a == std::vector<int>{0});
    CHECK(h1.hubs_b == std::vector<int>{1});
    CHECK(h1.forest.component_count() == 8);
    CHECK(h1.forest.max_degree() == 0);
    check_extraction(ds, 1, h1);

    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const auto r = gen_tree(50, 12, seed);
        const auto h = extract_hubs(r, 5);
        check_extraction(r, 5, h);
        CHECK(h.forest.max_degree() <= 2.0 * 99 / 5);
    }
    CHECK(kind_of([&] { extract_hubs(ds, 5); }) == PackError::Kind::Precondition);
}

TEST_CASE("pack_forests examples") {
    PackerConfig cfg;
    const BalancedForest edge({path_tree(2)});
    const auto one = pack_forests(4, 0.25, {edge}, cfg);
    CHECK(one.embeddings.size() == 1);

    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        std::vector<BalancedForest> forests;
        for (int i = 0; i < 3; ++i) forests.push_back(gen_forest(75, 1 + static_cast<int>((seed + i) % 4), 8, seed * 10 + i));
        const auto fp = pack_forests(100, 0.25, forests, cfg);
        Packing p;
        for (std::size_t i = 0; i < forests.size(); ++i) p.push_back({GuestGraph::from_forest(forests[i]), fp.embeddings[i]});
        CHECK(naive_packing_ok(BipartiteGraph::complete(100, 100), p));
        for (const auto& e : fp.ledger) {
            CHECK(e.min_degree >= e.required);
            CHECK(e.min_degree >= e.floor);
        }
    }

    std::vector<BalancedForest> too_many(17, edge);
    CHECK(kind_of([&] { pack_forests(4, 0.25, too_many, cfg); }) == PackError::Kind::GuardViolated);
    CHECK(kind_of([&] { pack_forests(4, 0.25, {BalancedForest({path_tree(8)})}, cfg); }) == PackError::Kind::Precondition);
}

TEST_CASE("pack_trees examples") {
    PackerConfig cfg;
    cfg.gamma = 0.3;
    cfg.hub_count = 1;
    const auto tiny = pack_trees(10, {gen_tree(3, 2, 1)}, cfg);
    CHECK(tiny.packing.size() == 1);
    CHECK(tiny.zone_size == 3);

    PackerConfig wide;
    wide.gamma = 0.25;
    CHECK(kind_of([&] { pack_trees(40, {gen_tree(31, 3, 1)}, wide); }) == PackError::Kind::Precondition);

    PackerConfig crowded;
    crowded.gamma = 0.25;
    crowded.hub_count = 6;
    std::vector<RootedTree> trees(2, gen_tree(20, 3, 2));
    CHECK(kind_of([&] { pack_trees(40, trees, crowded); }) == PackError::Kind::ZoneOverflow);
}

TEST_CASE("pack_trees at n=400 keeps zone discipline") {
    const int n = 400;
    PackerConfig cfg;
    cfg.check_tree_degree = true;
    for (std::uint64_t seed = 0; seed < 3; ++seed) {
        std::vector<RootedTree> trees;
        for (int i = 0; i < 4; ++i) trees.push_back(gen_tree(300, 10, seed * 4 + i));
        cfg.seed = seed;
        const auto tp = pack_trees(n, trees, cfg);
        CHECK(tp.hub_count == 20);
        CHECK(tp.zone_size == 100);
        CHECK(naive_packing_ok(BipartiteGraph::complete(n, n), tp.packing));
        std::set<std::pair<int, int>> hub_images;
        for (std::size_t i = 0; i < trees.size(); ++i) {
            const auto& h = tp.hubs[i];
            const auto& map = tp.packing[i].embedding.map;
            CHECK(map[trees[i].root()].side == Side::A);
            for (int v : h.hubs_a) {
                CHECK(map[v].index >= tp.zone_start);
                CHECK(hub_images.insert({0, map[v].index}).second);
            }
            for (int v : h.hubs_b) {
                CHECK(map[v].index >= tp.zone_start);
                CHECK(hub_images.insert({1, map[v].index}).second);
            }
            for (int g : h.forest_to_tree) CHECK(map[g].index < tp.zone_start);
        }
        for (const auto& e : tp.forests.ledger) CHECK(e.min_degree >= e.required);
    }
}

TEST_CASE("regularity engine inside the packer") {
    PackerConfig cfg;
    cfg.engine = Engine::Regularity;
    cfg.embedder.c = 0.1;
    cfg.embedder.search_witnesses = false;
    std::vector<BalancedForest> forests;
    for (int i = 0; i < 2; ++i) forests.push_back(gen_forest(30, 2, 4, i));
    const auto fp = pack_forests(60, 0.3, forests, cfg);
    CHECK(fp.embeddings.size() == 2);
}
