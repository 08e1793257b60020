#include <doctest.h>

#include <random>

#include "support.hpp"
#include "treepack/embedder.hpp"
#include "treepack/generate.hpp"
#include "treepack/oracle.hpp"

using namespace treepack;
using namespace testsupport;

TEST_CASE("complete and sparse hosts") {
    const auto k33 = BipartiteGraph::complete(3, 3);
    CHECK(k33.edge_count() == 9);
    CHECK(k33.min_degree() == 3);

    const std::vector<Edge> one{{0, 0}};
    const auto g = BipartiteGraph::from_edges(2, 2, one);
    CHECK(g.degree(Side::A, 1) == 0);
    CHECK(g.degree(Side::A, 0) == 1);

    CHECK(BipartiteGraph::complete(5, 3).edge_count() == 15);
}

TEST_CASE("graph construction rejects bad edges") {
    const std::vector<Edge> out_of_range{{0, 2}};
    CHECK_THROWS_AS(BipartiteGraph::from_edges(2, 2, out_of_range), GraphError);
    const std::vector<Edge> duplicate{{0, 1}, {0, 1}};
    CHECK_THROWS_AS(BipartiteGraph::from_edges(2, 2, duplicate), GraphError);
}

TEST_CASE("degrees never exceed the opposite side") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const auto g = BipartiteGraph::random(7, 5, 0.6, seed);
        for (int a = 0; a < 7; ++a) CHECK(g.degree(Side::A, a) <= 5);
        for (int b = 0; b < 5; ++b) CHECK(g.degree(Side::B, b) <= 7);
        std::int64_t total = 0;
        for (int a = 0; a < 7; ++a) total += g.degree(Side::A, a);
        CHECK(total == g.edge_count());
    }
}

TEST_CASE("rooted tree construction") {
    const auto edge = RootedTree::from_parents({-1, 0}, 0);
    CHECK(edge.class_size(Side::A) == 1);
    CHECK(edge.class_size(Side::B) == 1);
    CHECK(edge.balanced());

    const auto p4 = path_tree(4);
    CHECK(p4.balanced());
    CHECK(p4.max_degree() == 2);

    const auto star = star_tree(3);
    CHECK(star.class_size(Side::A) == 1);
    CHECK(star.class_size(Side::B) == 3);
    CHECK_FALSE(star.balanced());
}

TEST_CASE("rooted tree errors") {
    CHECK_THROWS_WITH_AS(RootedTree::from_parents({-1, 2, 1}, 0), doctest::Contains("cycle"), TreeError);
    CHECK_THROWS_WITH_AS(RootedTree::from_parents({-1, -1, 0}, 0), doctest::Contains("multiple roots"), TreeError);
    CHECK_THROWS_AS(RootedTree::from_parents({-1, 5}, 0), TreeError);
    CHECK_THROWS_AS(RootedTree::from_parents({}, 0), TreeError);
}

TEST_CASE("every tree edge joins the two parity classes") {
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        const auto t = random_tree(2 + static_cast<int>(seed), seed);
        for (auto [p, c] : t.edges()) CHECK(t.side(p) != t.side(c));
        CHECK(t.class_size(Side::A) + t.class_size(Side::B) == t.size());
    }
}

TEST_CASE("density") {
    const auto k33 = BipartiteGraph::complete(3, 3);
    const std::vector<int> all{0, 1, 2};
    CHECK(density(k33, all, all) == Fraction{1, 1});

    const std::vector<Edge> gone{{1, 2}};
    const auto minus = k33.without_edges(gone);
    CHECK(density(minus, all, all) == Fraction{8, 9});
    CHECK_THROWS_AS(density(k33, std::vector<int>{}, all), GraphError);

    std::mt19937_64 rng(3);
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        const auto g = BipartiteGraph::random(9, 8, 0.5, seed);
        std::vector<int> s, t;
        for (int a = 0; a < 9; ++a)
            if (rng() % 2) s.push_back(a);
        for (int b = 0; b < 8; ++b)
            if (rng() % 2) t.push_back(b);
        if (s.empty()) s.push_back(0);
        if (t.empty()) t.push_back(0);
        const Fraction f = density(g, s, t);
        CHECK(f == Fraction{count_edges(g, s, t), static_cast<std::int64_t>(s.size() * t.size())});
    }
}

TEST_CASE("remove_embedding_edges") {
    const auto k22 = BipartiteGraph::complete(2, 2);
    const auto edge = RootedTree::from_parents({-1, 0}, 0);
    const GuestGraph guest = GuestGraph::from_tree(edge);
    Embedding e{"e", {{Side::A, 0}, {Side::B, 1}}};
    const auto after = remove_embedding_edges(k22, guest, e);
    CHECK(after.edge_count() == 3);
    CHECK(k22.edge_count() == 4);
    CHECK_THROWS_AS(remove_embedding_edges(after, guest, e), GraphError);

    // Spanning path of K_{4,4}: a0 b0 a1 b1 a2 b2 a3 b3.
    const auto k44 = BipartiteGraph::complete(4, 4);
    const auto path = path_tree(8);
    Embedding pe;
    for (int v = 0; v < 8; ++v) pe.map.push_back({v % 2 == 0 ? Side::A : Side::B, v / 2});
    const auto rest = remove_embedding_edges(k44, GuestGraph::from_tree(path), pe);
    CHECK(rest.edge_count() == 9);
    for (int v = 0; v < 8; ++v) {
        const Side s = v % 2 == 0 ? Side::A : Side::B;
        const int lost = (v == 0 || v == 7) ? 1 : 2;
        CHECK(rest.degree(s, v / 2) == 4 - lost);
    }
}

TEST_CASE("verify_embedding examples") {
    const auto k11 = BipartiteGraph::complete(1, 1);
    const GuestGraph edge = GuestGraph::from_tree(RootedTree::from_parents({-1, 0}, 0));
    CHECK_FALSE(verify_embedding(k11, edge, Embedding{"x", {{Side::A, 0}, {Side::B, 0}}}).has_value());

    const GuestGraph p3 = GuestGraph::from_tree(path_tree(3));
    const auto k22 = BipartiteGraph::complete(2, 2);
    const auto v = verify_embedding(k22, p3, Embedding{"x", {{Side::A, 0}, {Side::B, 0}, {Side::A, 0}}});
    REQUIRE(v.has_value());
    CHECK(v->kind == ViolationKind::Injectivity);

    const auto side = verify_embedding(k22, edge, Embedding{"x", {{Side::B, 0}, {Side::A, 0}}});
    REQUIRE(side.has_value());
    CHECK(side->kind == ViolationKind::SideMismatch);

    const std::vector<Edge> only{{0, 0}};
    const auto sparse = BipartiteGraph::from_edges(2, 2, only);
    const auto missing = verify_embedding(sparse, edge, Embedding{"x", {{Side::A, 1}, {Side::B, 1}}});
    REQUIRE(missing.has_value());
    CHECK(missing->kind == ViolationKind::MissingEdge);

    CHECK(verify_embedding(k22, edge, Embedding{"x", {{Side::A, 0}}})->kind == ViolationKind::SizeMismatch);
    CHECK(verify_embedding(k22, edge, Embedding{"x", {{Side::A, 0}, {Side::B, 7}}})->kind == ViolationKind::OutOfRange);
}

TEST_CASE("pipeline embeddings agree with the naive scan") {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const auto host = BipartiteGraph::random(30, 30, 0.95, seed);
        const auto tree = gen_tree(12, 3, seed);
        const auto e = embed_tree_greedy(host, tree);
        const GuestGraph guest = GuestGraph::from_tree(tree);
        CHECK_FALSE(verify_embedding(host, guest, e).has_value());
        CHECK(naive_embedding_ok(host, guest, e));
        // Distinct host edges equal guest edges; removal drops exactly that many.
        auto used = e.host_edges(guest);
        std::sort(used.begin(), used.end());
        CHECK(std::unique(used.begin(), used.end()) == used.end());
        CHECK(remove_embedding_edges(host, guest, e).edge_count() == host.edge_count() - guest.edge_count());
    }
}

TEST_CASE("verify_packing examples") {
    const auto k22 = BipartiteGraph::complete(2, 2);
    CHECK_FALSE(verify_packing(k22, {}).has_value());

    const GuestGraph edge = GuestGraph::from_tree(RootedTree::from_parents({-1, 0}, 0));
    const Embedding e{"x", {{Side::A, 0}, {Side::B, 0}}};
    const auto v = verify_packing(k22, {{edge, e}, {edge, e}});
    REQUIRE(v.has_value());
    CHECK(v->kind == ViolationKind::EdgeReuse);
    CHECK(v->embedding == 1);
    CHECK(v->other_embedding == 0);
    CHECK(v->host_edge == Edge{0, 0});

    const Packing ds = double_star_decomposition(3);
    const auto k53 = BipartiteGraph::complete(5, 3);
    CHECK_FALSE(verify_packing(k53, ds).has_value());
    std::int64_t covered = 0;
    for (const auto& pg : ds) covered += pg.guest.edge_count();
    CHECK(covered == 15);
    CHECK(naive_packing_ok(k53, ds));
}

TEST_CASE("accepted packings never use more edges than the host has") {
    for (int n = 2; n <= 8; ++n) {
        const auto host = BipartiteGraph::complete(2 * n - 1, n);
        const Packing p = double_star_decomposition(n);
        REQUIRE_FALSE(verify_packing(host, p).has_value());
        std::int64_t total = 0;
        for (const auto& pg : p) total += pg.guest.edge_count();
        CHECK(total <= host.edge_count());
    }
}
