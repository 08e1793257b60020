#include <doctest.h>

#include <cmath>
#include <map>
#include <functional>
#include <random>
#include <set>

#include "support.hpp"
#include "treepack/embedder.hpp"
#include "treepack/generate.hpp"
#include "treepack/oracle.hpp"

using namespace treepack;
using namespace testsupport;

namespace {

EmbedStage stage_of(const std::function<void()>& f) {
    try {
        f();
    } catch (const EmbedError& e) {
        return e.stage();
    }
    FAIL("expected an EmbedError");
    return EmbedStage::Precondition;
}

RootedTree double_star_tree(int k) {
    std::vector<int> parent(2 * k, 0);
    parent[0] = -1;
    for (int v = k + 1; v < 2 * k; ++v) parent[v] = 1;
    return RootedTree::from_parents(parent, 0);
}

// Step-5 discipline, checked against the run's own records.
void check_discipline(const BipartiteGraph& host, const RootedTree& t, const EmbedderConfig& cfg, const RegularityRun& run) {
    const auto& sl = run.slices;
    const auto piece_of = run.decomposition.piece_of(t.size());
    std::vector<int> group_of(run.decomposition.pieces.size(), -1);
    for (int i = 0; i < static_cast<int>(run.groups.size()); ++i)
        for (int p : run.groups[i]) group_of[p] = i;
    std::map<std::pair<int, int>, int> interior_use;  // (side, group) -> count
    for (int v = 0; v < t.size(); ++v) {
        const HostVertex h = run.embedding.map[v];
        const Placement& pl = run.placements[v];
        REQUIRE(h.side == t.side(v));
        CHECK(sl.cluster_of(h.side, h.index) == pl.cluster);
        if (piece_of[v] < 0) {
            CHECK(pl.role == PlacementRole::Seed);
            CHECK_FALSE(sl.in_link(h.side, h.index));
            int misses = 0;
            for (int i = 0; i < sl.s; ++i) {
                const double base = (h.side == Side::A ? run.reduced.density[pl.cluster][i] : run.reduced.density[i][pl.cluster]).value();
                if (!typical_to(host, h.side, h.index, sl.link(opposite(h.side), i), base, cfg.eps)) ++misses;
            }
            CHECK(misses == pl.atypical_links);
            CHECK(misses <= cfg.typical_deficit() + 1e-9);
        } else if (run.decomposition.pieces[piece_of[v]].root == v) {
            CHECK(pl.role == PlacementRole::Linking);
            CHECK(sl.in_link(h.side, h.index));
            const HostVertex hp = run.embedding.map[t.parent(v)];
            CHECK(host.adjacent(h.side, h.index, hp.index));
            const int g = group_of[piece_of[v]];
            CHECK((h.side == Side::A ? run.reduced.has_edge(pl.cluster, g) : run.reduced.has_edge(g, pl.cluster)));
        } else {
            CHECK(pl.role == PlacementRole::Interior);
            CHECK_FALSE(sl.in_link(h.side, h.index));
            CHECK(pl.cluster == group_of[piece_of[v]]);
            ++interior_use[{static_cast<int>(h.side), pl.cluster}];
        }
    }
    for (const auto& [key, used] : interior_use) CHECK(used <= run.capacity + 1e-9);
    CHECK(run.embedding.map[t.root()].side == Side::A);
}

}  // namespace

TEST_CASE("slice sizes") {
    const auto g = BipartiteGraph::complete(40, 40);
    const auto p = equitable_partition(g, 2, 0.05, 1);
    REQUIRE(p.cluster_size == 20);
    const auto sl = slice_partition(p, 0.4, 7);
    CHECK(sl.link_size == 2);
    CHECK(sl.piece_size == 18);
    for (int i = 0; i < 2; ++i) {
        for (Side s : {Side::A, Side::B}) {
            std::vector<int> merged = sl.link(s, i);
            merged.insert(merged.end(), sl.piece(s, i).begin(), sl.piece(s, i).end());
            std::sort(merged.begin(), merged.end());
            const auto& cluster = s == Side::A ? p.clusters_x[i] : p.clusters_y[i];
            CHECK(merged == cluster);
            for (int v : sl.link(s, i)) CHECK(sl.in_link(s, v));
            for (int v : sl.piece(s, i)) CHECK_FALSE(sl.in_link(s, v));
        }
        for (int j = 0; j < 2; ++j) {
            CHECK(density(g, sl.link(Side::A, i), sl.piece(Side::B, j)) == Fraction{1, 1});
            CHECK(density(g, sl.piece(Side::A, i), sl.link(Side::B, j)) == Fraction{1, 1});
        }
    }
    const auto small = equitable_partition(BipartiteGraph::complete(3, 3), 1, 0.05, 1);
    CHECK_THROWS_AS(slice_partition(small, 0.3, 1), EmbedError);
    // Same seed, same split.
    CHECK(slice_partition(p, 0.4, 7).x_link == sl.x_link);
}

TEST_CASE("join_forest examples") {
    const BalancedForest single({path_tree(4)});
    const auto j1 = join_forest(single);
    CHECK(j1.added_edges.empty());
    CHECK(j1.tree == path_tree(4));

    const BalancedForest two({path_tree(2), path_tree(2)});
    const auto j2 = join_forest(two);
    CHECK(j2.added_edges.size() == 1);
    CHECK(j2.tree.size() == 4);
    CHECK(j2.tree.max_degree() == 2);
    int leaves = 0;
    for (int v = 0; v < 4; ++v) leaves += j2.tree.degree(v) == 1;
    CHECK(leaves == 2);

    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        const BalancedForest f = gen_forest(15, 5, 4, seed);
        REQUIRE(f.vertex_count() == 30);
        const auto j = join_forest(f);
        CHECK(j.added_edges.size() == 4);
        CHECK(j.tree.balanced());
        CHECK(j.tree.max_degree() <= std::max(f.max_degree(), 2));
        std::set<std::pair<int, int>> tree_edges;
        for (auto [p, c] : j.tree.edges()) tree_edges.insert({std::min(p, c), std::max(p, c)});
        for (auto [u, v] : f.edges()) CHECK(tree_edges.count({std::min(u, v), std::max(u, v)}) == 1);
        for (int v = 0; v < f.vertex_count(); ++v) CHECK(j.tree.side(v) == f.side(v));
    }
}

TEST_CASE("join_forest rejects unbalanced input") {
    const BalancedForest f({star_tree(2)});
    CHECK(stage_of([&] { join_forest(f); }) == EmbedStage::Precondition);
}

TEST_CASE("regularity engine: balanced path into complete(60,60)") {
    const auto host = BipartiteGraph::complete(60, 60);
    const auto t = path_tree(2 * 42);
    EmbedderConfig cfg;
    const auto run = regularity_pipeline(host, t, cfg);
    CHECK_FALSE(verify_embedding(host, GuestGraph::from_tree(t), run.embedding).has_value());
    check_discipline(host, t, cfg, run);
}

TEST_CASE("regularity engine: small cases and preconditions") {
    const auto host = BipartiteGraph::complete(60, 60);
    EmbedderConfig cfg;
    const auto edge = RootedTree::from_parents({-1, 0}, 0);
    const auto e = embed_tree_regularity(host, edge, cfg);
    CHECK(e.map[0].side == Side::A);
    CHECK_FALSE(verify_embedding(host, GuestGraph::from_tree(edge), e).has_value());

    const auto heavy = double_star_tree(10);  // degree 10 > 0.05 * 60
    CHECK(stage_of([&] { embed_tree_regularity(host, heavy, cfg); }) == EmbedStage::Precondition);
    CHECK(stage_of([&] { embed_tree_regularity(host, star_tree(3), cfg); }) == EmbedStage::Precondition);
    CHECK(stage_of([&] { embed_tree_regularity(BipartiteGraph::complete(60, 50), edge, cfg); }) == EmbedStage::Precondition);
}

TEST_CASE("regularity engine: staged failures") {
    EmbedderConfig cfg;
    cfg.check_preconditions = false;
    const auto t = gen_tree(20, 3, 1);
    CHECK(stage_of([&] { embed_tree_regularity(BipartiteGraph::empty(60, 60), t, cfg); }) == EmbedStage::PartitionFailed);

    const auto host = BipartiteGraph::complete(60, 60);
    CHECK(stage_of([&] { embed_tree_regularity(host, double_star_tree(30), cfg); }) == EmbedStage::SeedBoundExceeded);

    EmbedderConfig tight = cfg;
    tight.mu = 0.14;
    CHECK(stage_of([&] { embed_tree_regularity(host, t, tight); }) == EmbedStage::AssignmentFailed);

    // Half the host is cut away: the reduced graph loses its perfect matching.
    std::vector<Edge> edges;
    for (int a = 0; a < 60; ++a)
        for (int b = 0; b < 60; ++b)
            if (a < 30 || b < 30) edges.push_back({a, b});
    const auto lopsided = BipartiteGraph::from_edges(60, 60, edges);
    EmbedderConfig loose = cfg;
    loose.gamma = 0.01;
    loose.d = 0.0;
    loose.search_witnesses = false;
    const EmbedStage st = stage_of([&] { embed_tree_regularity(lopsided, t, loose); });
    CHECK((st == EmbedStage::PartitionFailed || st == EmbedStage::MatchingFailed || st == EmbedStage::PlacementExhausted));
}

TEST_CASE("placement exhaustion names cluster, piece and usage") {
    EmbedderConfig cfg;
    cfg.check_preconditions = false;
    cfg.search_witnesses = false;
    cfg.d = 0.0;
    bool seen = false;
    for (std::uint64_t seed = 0; seed < 10 && !seen; ++seed) {
        const auto host = BipartiteGraph::random(60, 60, 0.35, seed);
        cfg.seed = seed;
        try {
            embed_tree_regularity(host, gen_tree(40, 3, seed), cfg);
        } catch (const EmbedError& e) {
            if (e.stage() != EmbedStage::PlacementExhausted) continue;
            const std::string msg = e.what();
            CHECK(msg.find("cluster") != std::string::npos);
            CHECK(msg.find("piece") != std::string::npos);
            CHECK(msg.find("usage") != std::string::npos);
            seen = true;
        }
    }
    CHECK(seen);
}

TEST_CASE("regularity engine placement discipline on random trees") {
    for (int n : {60, 120}) {
        const auto host = BipartiteGraph::complete(n, n);
        for (std::uint64_t seed = 0; seed < 8; ++seed) {
            EmbedderConfig cfg;
            cfg.seed = seed;
            const auto t = gen_tree(n * 7 / 10, n / 20, seed);
            const auto run = regularity_pipeline(host, t, cfg);
            CHECK(naive_embedding_ok(host, GuestGraph::from_tree(t), run.embedding));
            check_discipline(host, t, cfg, run);
            // Seeds and linking vertices fit their slices.
            int seeds[2] = {0, 0}, links[2] = {0, 0};
            for (int v : run.decomposition.seeds) ++seeds[t.side(v) == Side::A ? 0 : 1];
            for (int v : run.decomposition.linking) ++links[t.side(v) == Side::A ? 0 : 1];
            CHECK(links[0] <= run.slices.s * run.slices.link_size);
            CHECK(links[1] <= run.slices.s * run.slices.link_size);
            // Element order starts at the root seed; every later element touches an earlier one.
            REQUIRE(!run.element_order.empty());
            CHECK(run.element_order.front() == t.root());
        }
    }
}

TEST_CASE("regularity engine on a dense random host") {
    const auto host = BipartiteGraph::random(120, 120, 0.97, 3);
    EmbedderConfig cfg;
    cfg.gamma = 0.3;
    REQUIRE(host.min_degree() >= 0.8 * 120);
    cfg.search_witnesses = false;
    int ok = 0;
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        cfg.seed = seed;
        const auto t = gen_tree(70, 4, seed);
        try {
            const auto run = regularity_pipeline(host, t, cfg);
            check_discipline(host, t, cfg, run);
            ++ok;
        } catch (const EmbedError& e) {
            MESSAGE("seed " << seed << ": " << std::string(e.what()));
        }
    }
    CHECK(ok >= 1);
}

TEST_CASE("proof-constant preset wiring") {
    const auto cfg = EmbedderConfig::proof_constants(0.3, 4);
    CHECK(cfg.eps == doctest::Approx(std::pow(0.3 / 120, 2)));
    CHECK(cfg.d == doctest::Approx(5 * std::sqrt(cfg.eps)));
    CHECK(cfg.mu == doctest::Approx(cfg.c));
    CHECK(cfg.c == doctest::Approx(cfg.eps * 0.3 / (50 * 16)));
    REQUIRE(cfg.beta.has_value());
    CHECK(*cfg.beta == doctest::Approx(cfg.eps * 0.3 / 256));
    CHECK(cfg.proof_preset);
    CHECK_NOTHROW(cfg.validate());

    EmbedderConfig bad;
    bad.gamma = 0.5;
    CHECK_THROWS_AS(bad.validate(), EmbedError);
    bad = EmbedderConfig{};
    bad.mu = 0.2;
    CHECK_THROWS_AS(bad.validate(), EmbedError);
}

TEST_CASE("embed_forest") {
    EmbedderConfig greedy;
    greedy.engine = Engine::Greedy;
    const BalancedForest two({path_tree(2), path_tree(2)});
    const auto e = embed_forest(BipartiteGraph::complete(4, 4), two, greedy);
    CHECK_FALSE(verify_embedding(BipartiteGraph::complete(4, 4), GuestGraph::from_forest(two), e).has_value());

    EmbedderConfig cfg;
    cfg.gamma = 0.4;
    cfg.c = 0.1;
    const auto host = BipartiteGraph::complete(40, 40);
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        cfg.seed = seed;
        const BalancedForest f = gen_forest(20, 3, 4, seed);
        const auto fe = embed_forest(host, f, cfg);
        CHECK_FALSE(verify_embedding(host, GuestGraph::from_forest(f), fe).has_value());
        for (int v = 0; v < f.vertex_count(); ++v) CHECK(fe.map[v].side == f.side(v));
    }

    const auto empty = embed_forest(host, BalancedForest{}, cfg);
    CHECK(empty.map.empty());
}

TEST_CASE("greedy engine") {
    for (int k = 1; k <= 12; ++k) {
        const auto host = BipartiteGraph::complete(12, 12);
        const auto t = gen_tree(k, 3, k);
        const auto e = embed_tree_greedy(host, t);
        CHECK_FALSE(verify_embedding(host, GuestGraph::from_tree(t), e).has_value());
        CHECK(e.map[t.root()].side == Side::A);
    }
    // Two joined stars into a host with a single edge.
    const std::vector<Edge> one{{0, 0}};
    const auto sparse = BipartiteGraph::from_edges(10, 10, one);
    CHECK(stage_of([&] { embed_tree_greedy(sparse, double_star_tree(3)); }) == EmbedStage::PlacementExhausted);
    const auto p4 = path_tree(4);
    CHECK(stage_of([&] { embed_tree_greedy(sparse, p4); }) == EmbedStage::PlacementExhausted);
    CHECK(stage_of([&] { embed_tree_greedy(sparse, star_tree(2)); }) == EmbedStage::Precondition);
}

TEST_CASE("greedy engine packs trees while the minimum degree stays high") {
    const int n = 200;
    const double gamma = 0.25;
    std::mt19937_64 rng(42);
    auto host = BipartiteGraph::complete(n, n);
    Packing packing;
    int embedded = 0;
    for (int i = 0; i < 200; ++i) {
        if (host.min_degree() < (0.5 + gamma) * n) break;
        const int k = 10 + static_cast<int>(rng() % 141);
        const auto t = gen_tree(k, 4, rng());
        Embedding e = embed_tree_greedy(host, t);
        e.guest_id = "T" + std::to_string(i);
        const GuestGraph g = GuestGraph::from_tree(t);
        host = remove_embedding_edges(host, g, e);
        packing.push_back({g, e});
        ++embedded;
    }
    MESSAGE("trees embedded before the degree floor: " << embedded);
    CHECK(embedded >= 10);
    CHECK_FALSE(verify_packing(BipartiteGraph::complete(n, n), packing).has_value());
}

TEST_CASE("both engines satisfy the same contract") {
    const auto host = BipartiteGraph::complete(60, 60);
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        const auto t = gen_tree(40, 3, seed);
        EmbedderConfig cfg;
        cfg.seed = seed;
        for (Engine engine : {Engine::Regularity, Engine::Greedy}) {
            cfg.engine = engine;
            const auto e = embed_tree(host, t, cfg);
            CHECK_FALSE(verify_embedding(host, GuestGraph::from_tree(t), e).has_value());
            CHECK(e.map[t.root()].side == Side::A);
        }
    }
}

TEST_CASE("engine names") {
    CHECK(parse_engine("greedy") == Engine::Greedy);
    CHECK(std::string(to_string(parse_engine("regularity"))) == "regularity");
    CHECK_THROWS_AS(parse_engine("magic"), Error);
}
