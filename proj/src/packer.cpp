#include "treepack/packer.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace treepack {

namespace {

constexpr double kSlack = 1e-9;

std::vector<int> top_by_degree(const RootedTree& tree, Side side, int k) {
    std::vector<int> cls;
    for (int v = 0; v < tree.size(); ++v)
        if (tree.side(v) == side) cls.push_back(v);
    if (static_cast<int>(cls.size()) < k) throw PackError(PackError::Kind::Precondition, "hub count exceeds class size");
    std::stable_sort(cls.begin(), cls.end(), [&](int a, int b) { return tree.degree(a) > tree.degree(b); });
    cls.resize(k);
    return cls;
}

}  // namespace

const char* to_string(PackError::Kind kind) {
    switch (kind) {
        case PackError::Kind::Precondition: return "Precondition";
        case PackError::Kind::GuardViolated: return "GuardViolated";
        case PackError::Kind::ZoneOverflow: return "ZoneOverflow";
        case PackError::Kind::LedgerViolated: return "LedgerViolated";
        case PackError::Kind::EngineFailed: return "EngineFailed";
        case PackError::Kind::VerifyFailed: return "VerifyFailed";
    }
    return "Unknown";
}

int PackerConfig::hubs_for(int n) const {
    if (hub_count) return *hub_count;
    return static_cast<int>(std::ceil(8.0 * std::sqrt(static_cast<double>(n)) / hub_c - kSlack));
}

HubExtraction extract_hubs(const RootedTree& tree, int k, int tree_id) {
    if (k < 0) throw PackError(PackError::Kind::Precondition, "hub count must be non-negative");
    if (2 * k >= tree.size()) {
        throw PackError(PackError::Kind::Precondition, "hub count " + std::to_string(k) + " too large for a tree on " +
                                                           std::to_string(tree.size()) + " vertices");
    }
    HubExtraction out;
    out.tree_id = tree_id;
    out.hubs_a = top_by_degree(tree, Side::A, k);
    out.hubs_b = top_by_degree(tree, Side::B, k);
    std::vector<char> hub(tree.size(), 0);
    for (int v : out.hubs_a) hub[v] = 1;
    for (int v : out.hubs_b) hub[v] = 1;

    for (const auto& [p, c] : tree.edges())
        if (hub[p] || hub[c]) out.hub_edges.emplace_back(p, c);

    // Components in BFS order; local ids follow discovery order.
    std::vector<int> comp(tree.size(), -1), local(tree.size(), -1);
    std::vector<std::vector<int>> members;
    for (int v : tree.bfs_order()) {
        if (hub[v]) continue;
        const int p = tree.parent(v);
        if (p == RootedTree::kNoParent || hub[p]) {
            comp[v] = static_cast<int>(members.size());
            members.emplace_back();
        } else {
            comp[v] = comp[p];
        }
        local[v] = static_cast<int>(members[comp[v]].size());
        members[comp[v]].push_back(v);
    }
    std::vector<RootedTree> components;
    std::vector<Side> root_sides;
    for (const auto& verts : members) {
        std::vector<int> parents(verts.size(), -1);
        for (std::size_t i = 1; i < verts.size(); ++i) parents[i] = local[tree.parent(verts[i])];
        components.push_back(RootedTree::from_parents(std::move(parents), 0));
        root_sides.push_back(tree.side(verts[0]));
        out.forest_to_tree.insert(out.forest_to_tree.end(), verts.begin(), verts.end());
    }
    out.forest = BalancedForest(std::move(components), std::move(root_sides));
    return out;
}

ForestPacking pack_forests(int n, double gamma, const std::vector<BalancedForest>& forests, const PackerConfig& cfg) {
    if (n < 1) throw PackError(PackError::Kind::Precondition, "host side must be positive");
    if (!(gamma >= 0.0 && gamma < 0.5)) throw PackError(PackError::Kind::Precondition, "gamma must lie in [0, 1/2)");
    ForestPacking out;
    out.n = n;
    out.gamma = gamma;

    int degree = 0;
    for (const auto& f : forests) degree = std::max(degree, f.max_degree());
    if (cfg.forest_degree_bound) {
        if (degree > *cfg.forest_degree_bound) {
            throw PackError(PackError::Kind::Precondition, "forest degree " + std::to_string(degree) + " exceeds the bound");
        }
        degree = *cfg.forest_degree_bound;
    }
    out.degree_bound = degree;
    for (std::size_t i = 0; i < forests.size(); ++i) {
        const auto& f = forests[i];
        if (!f.balanced()) throw PackError(PackError::Kind::Precondition, "forest is not balanced", static_cast<int>(i));
        if (f.vertex_count() > 2.0 * (1.0 - gamma) * n + kSlack) {
            throw PackError(PackError::Kind::Precondition, "forest has more than 2(1-gamma)n vertices", static_cast<int>(i));
        }
    }
    const double t = static_cast<double>(forests.size());
    if (t * degree > (0.5 - gamma) * n + kSlack) {
        throw PackError(PackError::Kind::GuardViolated, "t*c*d(n) = " + std::to_string(t * degree) +
                                                            " exceeds (1/2-gamma)n = " + std::to_string((0.5 - gamma) * n));
    }

    BipartiteGraph host = BipartiteGraph::complete(n, n);
    Packing packing;
    for (std::size_t i = 0; i < forests.size(); ++i) {
        LedgerEntry entry;
        entry.index = static_cast<int>(i);
        entry.min_degree = host.min_degree();
        entry.required = n - static_cast<double>(i) * degree;
        entry.floor = (0.5 + gamma) * n;
        out.ledger.push_back(entry);
        if (entry.min_degree < entry.required - kSlack || entry.min_degree < entry.floor - kSlack) {
            throw PackError(PackError::Kind::LedgerViolated,
                            "min degree " + std::to_string(entry.min_degree) + " below the ledger bound before forest " +
                                std::to_string(i),
                            static_cast<int>(i));
        }

        EmbedderConfig ecfg = cfg.embedder;
        ecfg.engine = cfg.engine;
        ecfg.seed = cfg.seed + i;
        if (cfg.engine == Engine::Regularity) ecfg.gamma = gamma;
        Embedding e;
        try {
            e = embed_forest(host, forests[i], ecfg);
        } catch (const Error& err) {
            throw PackError(PackError::Kind::EngineFailed, "forest " + std::to_string(i) + ": " + err.what(),
                            static_cast<int>(i));
        }
        e.guest_id = "F" + std::to_string(i);
        const GuestGraph guest = GuestGraph::from_forest(forests[i]);
        host = remove_embedding_edges(host, guest, e);
        packing.push_back(PackedGuest{guest, e});
        out.embeddings.push_back(std::move(e));
    }
    if (auto v = verify_packing(BipartiteGraph::complete(n, n), packing)) {
        throw PackError(PackError::Kind::VerifyFailed, v->describe());
    }
    return out;
}

TreePacking pack_trees(int n, const std::vector<RootedTree>& trees, const PackerConfig& cfg) {
    const double gamma = cfg.gamma;
    if (!(gamma > 0.0 && gamma < 0.5)) throw PackError(PackError::Kind::Precondition, "gamma must lie in (0, 1/2)");
    TreePacking out;
    out.n = n;
    out.zone_size = static_cast<int>(std::floor(gamma * n + kSlack));
    out.zone_start = n - out.zone_size;
    out.hub_count = cfg.hubs_for(n);
    const int inner = out.zone_start;

    for (std::size_t i = 0; i < trees.size(); ++i) {
        const auto& t = trees[i];
        const int idx = static_cast<int>(i);
        if (!t.balanced()) throw PackError(PackError::Kind::Precondition, "tree is not balanced", idx);
        if (t.class_size(Side::A) > (1.0 - gamma) * n + kSlack) {
            throw PackError(PackError::Kind::Precondition, "tree has more than (1-gamma)n vertices per class", idx);
        }
        if (cfg.check_tree_degree && t.max_degree() > cfg.c * std::sqrt(static_cast<double>(n)) + kSlack) {
            throw PackError(PackError::Kind::Precondition, "tree degree exceeds c sqrt(n)", idx);
        }
    }

    int zone_used = 0;
    std::vector<BalancedForest> forests;
    for (std::size_t i = 0; i < trees.size(); ++i) {
        const int k = std::min(out.hub_count, (trees[i].size() - 1) / 2);
        zone_used += k;
        if (zone_used > out.zone_size) {
            throw PackError(PackError::Kind::ZoneOverflow, "hubs need " + std::to_string(zone_used) +
                                                               " zone vertices per side, zone holds " +
                                                               std::to_string(out.zone_size),
                            static_cast<int>(i));
        }
        out.hubs.push_back(extract_hubs(trees[i], k, static_cast<int>(i)));
        forests.push_back(out.hubs.back().forest);
    }

    int widest = 0;
    for (const auto& f : forests) widest = std::max(widest, f.class_size(Side::A));
    // Slack left inside K_{n-n'} by the widest residual forest.
    const double inner_gamma = inner > 0 ? std::clamp(1.0 - static_cast<double>(widest) / inner, 0.0, gamma) : 0.0;
    out.forests = pack_forests(inner, inner_gamma, forests, cfg);

    int next_a = out.zone_start, next_b = out.zone_start;
    for (std::size_t i = 0; i < trees.size(); ++i) {
        const auto& t = trees[i];
        const auto& hx = out.hubs[i];
        Embedding e;
        e.guest_id = "T" + std::to_string(i);
        e.map.assign(t.size(), HostVertex{});
        const Embedding& fe = out.forests.embeddings[i];
        for (std::size_t g = 0; g < hx.forest_to_tree.size(); ++g) e.map[hx.forest_to_tree[g]] = fe.map[g];
        for (int v : hx.hubs_a) e.map[v] = HostVertex{Side::A, next_a++};
        for (int v : hx.hubs_b) e.map[v] = HostVertex{Side::B, next_b++};
        if (e.map[t.root()].side != Side::A) throw PackError(PackError::Kind::VerifyFailed, "root image not in side A", static_cast<int>(i));
        for (int v = 0; v < t.size(); ++v) {
            const bool is_hub = e.map[v].index >= out.zone_start;
            const bool expected = std::find(hx.hubs_a.begin(), hx.hubs_a.end(), v) != hx.hubs_a.end() ||
                                  std::find(hx.hubs_b.begin(), hx.hubs_b.end(), v) != hx.hubs_b.end();
            if (is_hub != expected) throw PackError(PackError::Kind::VerifyFailed, "zone discipline broken", static_cast<int>(i));
        }
        out.packing.push_back(PackedGuest{GuestGraph::from_tree(t), std::move(e)});
    }
    if (auto v = verify_packing(BipartiteGraph::complete(n, n), out.packing)) {
        throw PackError(PackError::Kind::VerifyFailed, v->describe());
    }
    return out;
}

}  // namespace treepack
