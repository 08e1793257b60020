#include "treepack/embedder.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <sstream>

namespace treepack {

namespace {

constexpr double kSlack = 1e-9;

std::string describe_usage(const SlicedPartition& slices, const std::vector<char>& used_a, const std::vector<char>& used_b) {
    std::ostringstream os;
    for (Side side : {Side::A, Side::B}) {
        const auto& used = side == Side::A ? used_a : used_b;
        for (int i = 0; i < slices.s; ++i) {
            auto count = [&](const std::vector<int>& slice) {
                return std::count_if(slice.begin(), slice.end(), [&](int v) { return used[v] != 0; });
            };
            os << (side == Side::A ? " X" : " Y") << i << "[L " << count(slices.link(side, i)) << "/"
               << slices.link(side, i).size() << ", P " << count(slices.piece(side, i)) << "/"
               << slices.piece(side, i).size() << "]";
        }
    }
    return os.str();
}

struct Plan {
    BetaDecomposition decomposition;
    std::vector<DemandPair> demands;
    Groups groups;
    double capacity = 0.0;
};

// Decomposition of a tree with at most one edge: every vertex is a seed.
BetaDecomposition trivial_decomposition(const RootedTree& tree) {
    BetaDecomposition dec;
    dec.beta = 1.0;
    dec.t = tree.edge_count();
    dec.seeds.resize(tree.size());
    std::iota(dec.seeds.begin(), dec.seeds.end(), 0);
    return dec;
}

// Step 2 and Step 4: decompose the tree and assign its pieces to cluster pairs.
class Planner {
public:
    Planner(const RootedTree& tree, const SlicedPartition& slices, const EmbedderConfig& cfg)
        : tree_(tree), slices_(slices), cfg_(cfg) {}

    Plan run() {
        if (tree_.edge_count() <= 1) {
            if (auto plan = attempt(trivial_decomposition(tree_))) return *plan;
            throw EmbedError(last_stage_, last_reason_);
        }
        const std::vector<double> betas = cfg_.beta ? std::vector<double>{*cfg_.beta} : beta_schedule();
        for (double beta : betas) {
            if (tree_.edge_count() <= 1.0 / beta + kSlack) {
                record(EmbedStage::SeedBoundExceeded, "tree too small for beta=" + std::to_string(beta));
                continue;
            }
            if (auto plan = attempt(beta_decompose(tree_, beta))) return *plan;
        }
        throw EmbedError(assignment_failed_ ? EmbedStage::AssignmentFailed : last_stage_,
                         last_reason_ + (cfg_.beta ? "" : " (no beta in the schedule works)"));
    }

private:
    void record(EmbedStage stage, std::string reason) {
        if (stage == EmbedStage::AssignmentFailed) assignment_failed_ = true;
        last_stage_ = stage;
        last_reason_ = std::move(reason);
    }

    std::optional<Plan> attempt(BetaDecomposition dec) {
        const int link_capacity = slices_.s * slices_.link_size;
        int links[2] = {0, 0};
        for (int v : dec.linking) ++links[tree_.side(v) == Side::A ? 0 : 1];
        if (links[0] > link_capacity || links[1] > link_capacity) {
            record(EmbedStage::SeedBoundExceeded, "linking vertices (" + std::to_string(links[0]) + "," +
                                                      std::to_string(links[1]) + ") exceed L-slice capacity " +
                                                      std::to_string(link_capacity) + " per side");
            return std::nullopt;
        }
        if (cfg_.proof_preset) {
            const double bound = cfg_.gamma / 8.0 * (slices_.link_size + slices_.piece_size);
            if (static_cast<double>(dec.seeds.size() + dec.linking.size()) > bound + kSlack) {
                record(EmbedStage::SeedBoundExceeded, "|S u L(T)| = " + std::to_string(dec.seeds.size() + dec.linking.size()) +
                                                          " exceeds (gamma/8)|X_1| = " + std::to_string(bound));
                return std::nullopt;
            }
        }

        Plan plan;
        // P-slice demand of each piece: the root goes to an L-slice.
        std::vector<DemandPair> p_demand;
        for (const auto& piece : dec.pieces) {
            DemandPair d;
            for (int v : piece.vertices) {
                if (v == piece.root && piece.root != tree_.root()) continue;
                (tree_.side(v) == Side::A ? d.x : d.y) += 1;
            }
            p_demand.push_back(d);
        }
        try {
            if (cfg_.proof_preset) {
                AssignmentInstance instance;
                for (const auto& c : piece_parity_counts(tree_, dec)) instance.pairs.push_back({c.even, c.odd});
                instance.m = slices_.piece_size;
                instance.s = slices_.s;
                instance.mu = cfg_.mu;
                plan.groups = partition_pieces(instance);
                plan.demands = instance.pairs;
                plan.capacity = instance.capacity();
            } else {
                plan.capacity = (1.0 - 7.0 * cfg_.mu) * slices_.piece_size;
                plan.groups = assign_groups(p_demand, slices_.s, plan.capacity, 20'000);
                plan.demands = p_demand;
            }
        } catch (const AssignmentError& e) {
            record(EmbedStage::AssignmentFailed, e.what());
            return std::nullopt;
        }

        // Seeds take P-slice vertices left over by the assigned pieces.
        std::int64_t demand[2] = {0, 0};
        for (const auto& d : p_demand) {
            demand[0] += d.x;
            demand[1] += d.y;
        }
        int seeds[2] = {0, 0};
        for (int v : dec.seeds) ++seeds[tree_.side(v) == Side::A ? 0 : 1];
        const std::int64_t p_capacity = static_cast<std::int64_t>(slices_.s) * slices_.piece_size;
        if (seeds[0] + demand[0] > p_capacity || seeds[1] + demand[1] > p_capacity) {
            record(EmbedStage::SeedBoundExceeded, "seeds do not fit beside the assigned pieces");
            return std::nullopt;
        }
        plan.decomposition = std::move(dec);
        return plan;
    }

    const RootedTree& tree_;
    const SlicedPartition& slices_;
    const EmbedderConfig& cfg_;
    EmbedStage last_stage_ = EmbedStage::SeedBoundExceeded;
    std::string last_reason_ = "no decomposition attempted";
    bool assignment_failed_ = false;
};

// Step 5: successive placement of seeds and pieces.
class Placer {
public:
    Placer(const BipartiteGraph& g, const RootedTree& tree, const EmbedderConfig& cfg, const ReducedGraph& reduced,
           const SlicedPartition& slices, const Plan& plan)
        : g_(g), tree_(tree), cfg_(cfg), reduced_(reduced), slices_(slices), plan_(plan) {
        used_a_.assign(g.size_a(), 0);
        used_b_.assign(g.size_b(), 0);
        phi_.assign(tree.size(), HostVertex{});
        placements_.assign(tree.size(), Placement{});
        piece_of_ = plan.decomposition.piece_of(tree.size());
        group_of_piece_.assign(plan.decomposition.pieces.size(), -1);
        for (int i = 0; i < static_cast<int>(plan.groups.size()); ++i)
            for (int p : plan.groups[i]) group_of_piece_[p] = i;
        reserved_[0].assign(slices.s, 0);
        reserved_[1].assign(slices.s, 0);
        for (int p = 0; p < static_cast<int>(plan.decomposition.pieces.size()); ++p) {
            const auto& piece = plan.decomposition.pieces[p];
            for (int v : piece.vertices)
                if (v != piece.root) ++reserved_[idx(tree.side(v))][group_of_piece_[p]];
        }
    }

    void run() {
        std::vector<int> queue{tree_.root()};  // seeds as vertex ids, pieces as -(index+1)
        std::vector<char> piece_done(plan_.decomposition.pieces.size(), 0);
        std::vector<char> seed_done(tree_.size(), 0);
        seed_done[tree_.root()] = 1;
        for (std::size_t head = 0; head < queue.size(); ++head) {
            const int element = queue[head];
            std::vector<int> frontier;  // vertices whose children may start new elements
            if (element >= 0) {
                place_seed(element);
                frontier.push_back(element);
            } else {
                const int p = -element - 1;
                place_piece(p);
                frontier = piece_bfs(p);
            }
            for (int u : frontier) {
                for (int c : tree_.children(u)) {
                    if (piece_of_[c] < 0) {
                        if (!seed_done[c]) {
                            seed_done[c] = 1;
                            queue.push_back(c);
                        }
                    } else if (piece_of_[c] != piece_of_[u] && !piece_done[piece_of_[c]]) {
                        piece_done[piece_of_[c]] = 1;
                        queue.push_back(-piece_of_[c] - 1);
                    }
                }
            }
        }
        order_ = std::move(queue);
    }

    std::vector<HostVertex> take_map() { return std::move(phi_); }
    std::vector<Placement> take_placements() { return std::move(placements_); }
    std::vector<int> take_order() { return std::move(order_); }

private:
    static int idx(Side s) { return s == Side::A ? 0 : 1; }

    bool used(Side s, int v) const { return (s == Side::A ? used_a_ : used_b_)[v] != 0; }

    void mark(int guest, Side s, int v) {
        (s == Side::A ? used_a_ : used_b_)[v] = 1;
        phi_[guest] = HostVertex{s, v};
    }

    // Density of the cluster pair containing a vertex of side `s` in cluster `own`.
    double base_density(Side s, int own, int other) const {
        return (s == Side::A ? reduced_.density[own][other] : reduced_.density[other][own]).value();
    }

    bool reduced_edge(Side s, int own, int other) const {
        return s == Side::A ? reduced_.has_edge(own, other) : reduced_.has_edge(other, own);
    }

    std::vector<int> unused_of(Side s, const std::vector<int>& slice) const {
        std::vector<int> out;
        for (int v : slice)
            if (!used(s, v)) out.push_back(v);
        return out;
    }

    [[noreturn]] void exhausted(int guest, const std::string& what, int cluster, int piece) const {
        std::ostringstream os;
        os << what << " for guest vertex " << guest << " (cluster " << cluster << ", piece " << piece
           << "); usage:" << describe_usage(slices_, used_a_, used_b_);
        throw EmbedError(EmbedStage::PlacementExhausted, os.str());
    }

    int atypical_links(Side s, int cluster, int v) const {
        int misses = 0;
        for (int i = 0; i < slices_.s; ++i) {
            if (!typical_to(g_, s, v, slices_.link(opposite(s), i), base_density(s, cluster, i), cfg_.eps)) ++misses;
        }
        return misses;
    }

    void place_seed(int v) {
        const Side s = tree_.side(v);
        const int parent = tree_.parent(v);
        std::vector<int> clusters(slices_.s);
        std::iota(clusters.begin(), clusters.end(), 0);
        std::vector<int> used_count(slices_.s);
        for (int j = 0; j < slices_.s; ++j)
            used_count[j] = static_cast<int>(slices_.piece(s, j).size() - unused_of(s, slices_.piece(s, j)).size());
        std::stable_sort(clusters.begin(), clusters.end(), [&](int a, int b) { return used_count[a] < used_count[b]; });

        for (int j : clusters) {
            const std::vector<int> free = unused_of(s, slices_.piece(s, j));
            if (static_cast<int>(free.size()) - reserved_[idx(s)][j] <= 0) continue;
            for (int w : free) {
                if (parent != RootedTree::kNoParent) {
                    const HostVertex& hp = phi_[parent];
                    if (!g_.adjacent(hp.side, hp.index, w)) continue;
                }
                const int misses = atypical_links(s, j, w);
                if (misses > cfg_.typical_deficit() + kSlack) continue;
                mark(v, s, w);
                placements_[v] = Placement{PlacementRole::Seed, j, false, -1, misses};
                return;
            }
        }
        exhausted(v, "no typical P-slice vertex for seed", -1, -1);
    }

    void place_piece(int p) {
        const auto& piece = plan_.decomposition.pieces[p];
        const int group = group_of_piece_[p];
        const int r = piece.root;
        const Side s = tree_.side(r);
        const HostVertex hp = phi_[tree_.parent(r)];
        const int parent_cluster = slices_.cluster_of(hp.side, hp.index);

        // Clusters on side s usable for the L-slice detour, most free L vertices first.
        std::vector<std::pair<int, int>> options;  // (-free, cluster)
        for (int l = 0; l < slices_.s; ++l) {
            if (!reduced_edge(s, l, group)) continue;
            if (!typical_to(g_, hp.side, hp.index, slices_.link(s, l), base_density(hp.side, parent_cluster, l), cfg_.eps)) {
                continue;
            }
            options.emplace_back(-static_cast<int>(unused_of(s, slices_.link(s, l)).size()), l);
        }
        std::sort(options.begin(), options.end());

        const std::vector<int> target = unused_of(opposite(s), slices_.piece(opposite(s), group));
        bool placed = false;
        for (auto [neg_free, l] : options) {
            for (int w : unused_of(s, slices_.link(s, l))) {
                if (!g_.adjacent(hp.side, hp.index, w)) continue;
                if (!typical_to(g_, s, w, target, base_density(s, l, group), cfg_.eps)) continue;
                mark(r, s, w);
                placements_[r] = Placement{PlacementRole::Linking, l, true, p, 0};
                placed = true;
                break;
            }
            if (placed) break;
        }
        if (!placed) exhausted(r, "no L-slice vertex for linking vertex", group, p);

        for (int u : piece_bfs(p)) {
            for (int c : tree_.children(u)) {
                if (piece_of_[c] != p) continue;
                place_interior(c, u, p, group);
            }
        }
    }

    void place_interior(int v, int parent, int p, int group) {
        const Side s = tree_.side(v);
        const HostVertex hp = phi_[parent];
        const std::vector<int> target = unused_of(opposite(s), slices_.piece(opposite(s), group));
        const double base = reduced_.density[group][group].value();
        for (int w : unused_of(s, slices_.piece(s, group))) {
            if (!g_.adjacent(hp.side, hp.index, w)) continue;
            if (!typical_to(g_, s, w, target, base, cfg_.eps)) continue;
            mark(v, s, w);
            --reserved_[idx(s)][group];
            placements_[v] = Placement{PlacementRole::Interior, group, false, p, 0};
            return;
        }
        exhausted(v, "no typical P-slice neighbour", group, p);
    }

    // Piece vertices in BFS order from the piece root.
    std::vector<int> piece_bfs(int p) const {
        const auto& piece = plan_.decomposition.pieces[p];
        std::vector<int> order{piece.root};
        for (std::size_t k = 0; k < order.size(); ++k)
            for (int c : tree_.children(order[k]))
                if (piece_of_[c] == p) order.push_back(c);
        return order;
    }

    const BipartiteGraph& g_;
    const RootedTree& tree_;
    const EmbedderConfig& cfg_;
    const ReducedGraph& reduced_;
    const SlicedPartition& slices_;
    const Plan& plan_;
    std::vector<char> used_a_, used_b_;
    std::vector<HostVertex> phi_;
    std::vector<Placement> placements_;
    std::vector<int> piece_of_;
    std::vector<int> group_of_piece_;
    std::vector<int> reserved_[2];
    std::vector<int> order_;
};

void check_tree_preconditions(const BipartiteGraph& host, const RootedTree& tree, const EmbedderConfig& cfg) {
    auto fail = [](const std::string& what) { throw EmbedError(EmbedStage::Precondition, what); };
    if (host.size_a() != host.size_b()) fail("host is not balanced");
    const int n = host.size_a();
    if (!tree.balanced()) fail("tree is not balanced");
    if (host.min_degree() < (0.5 + cfg.gamma) * n - kSlack) {
        fail("host minimum degree " + std::to_string(host.min_degree()) + " below (1/2+gamma)n");
    }
    if (tree.size() > 2.0 * (1.0 - cfg.gamma) * n + kSlack) fail("tree has more than 2(1-gamma)n vertices");
    if (tree.max_degree() > cfg.c * n + kSlack) {
        fail("tree maximum degree " + std::to_string(tree.max_degree()) + " exceeds c*n = " + std::to_string(cfg.c * n));
    }
}

}  // namespace

const char* to_string(Engine engine) { return engine == Engine::Regularity ? "regularity" : "greedy"; }

Engine parse_engine(const std::string& name) {
    if (name == "regularity") return Engine::Regularity;
    if (name == "greedy") return Engine::Greedy;
    throw Error("unknown engine '" + name + "'");
}

const char* to_string(EmbedStage stage) {
    switch (stage) {
        case EmbedStage::Precondition: return "Precondition";
        case EmbedStage::PartitionFailed: return "PartitionFailed";
        case EmbedStage::MatchingFailed: return "MatchingFailed";
        case EmbedStage::SeedBoundExceeded: return "SeedBoundExceeded";
        case EmbedStage::AssignmentFailed: return "AssignmentFailed";
        case EmbedStage::PlacementExhausted: return "PlacementExhausted";
        case EmbedStage::NoLeafPair: return "NoLeafPair";
    }
    return "Unknown";
}

EmbedderConfig EmbedderConfig::proof_constants(double gamma, int s) {
    EmbedderConfig cfg;
    cfg.gamma = gamma;
    cfg.s = s;
    cfg.eps = (gamma / 120.0) * (gamma / 120.0);
    cfg.d = 5.0 * std::sqrt(cfg.eps);
    const double k0 = s;
    cfg.c = cfg.eps * gamma / (50.0 * k0 * k0);
    cfg.beta = cfg.eps * gamma / (k0 * k0 * k0 * k0);
    cfg.mu = cfg.c;
    cfg.proof_preset = true;
    return cfg;
}

double EmbedderConfig::typical_deficit() const { return std::sqrt(eps) * s; }

void EmbedderConfig::validate() const {
    auto fail = [](const std::string& what) { throw EmbedError(EmbedStage::Precondition, "config: " + what); };
    if (!(gamma > 0.0 && gamma < 0.5)) fail("gamma must lie in (0, 1/2)");
    if (!(eps > 0.0 && eps < 1.0)) fail("eps must lie in (0, 1)");
    if (!(d >= 0.0 && d < 1.0)) fail("d must lie in [0, 1)");
    if (s < 1) fail("s must be positive");
    if (!(c > 0.0)) fail("c must be positive");
    if (!(mu >= 0.0 && mu < 1.0 / 7.0)) fail("mu must lie in [0, 1/7)");
    if (beta && !(*beta > 0.0 && *beta < 1.0)) fail("beta must lie in (0, 1)");
}

std::vector<double> beta_schedule() {
    std::vector<double> out;
    for (int k = 4; k <= 190; ++k) out.push_back(k / 200.0);
    return out;
}

SlicedPartition slice_partition(const RegularPartition& partition, double gamma, std::uint64_t seed) {
    const int m0 = partition.cluster_size;
    const double share = gamma / 4.0 * m0;
    if (share < 1.0 - kSlack) {
        throw EmbedError(EmbedStage::PartitionFailed, "clusters of size " + std::to_string(m0) + " too small to slice at gamma=" +
                                                          std::to_string(gamma));
    }
    SlicedPartition sp;
    sp.s = partition.s;
    sp.link_size = static_cast<int>(std::ceil(share - kSlack));
    sp.piece_size = m0 - sp.link_size;
    if (sp.piece_size < 1) throw EmbedError(EmbedStage::PartitionFailed, "no room left for P-slices");

    std::mt19937_64 rng(seed);
    for (Side side : {Side::A, Side::B}) {
        const auto& clusters = side == Side::A ? partition.clusters_x : partition.clusters_y;
        const auto& exceptional = side == Side::A ? partition.exceptional_x : partition.exceptional_y;
        auto& links = side == Side::A ? sp.x_link : sp.y_link;
        auto& pieces = side == Side::A ? sp.x_piece : sp.y_piece;
        auto& cluster_of = side == Side::A ? sp.cluster_of_a : sp.cluster_of_b;
        auto& in_link = side == Side::A ? sp.in_link_a : sp.in_link_b;
        const std::size_t total = static_cast<std::size_t>(partition.s) * m0 + exceptional.size();
        cluster_of.assign(total, -1);
        in_link.assign(total, 0);
        for (int i = 0; i < partition.s; ++i) {
            std::vector<int> verts = clusters[i];
            std::shuffle(verts.begin(), verts.end(), rng);
            std::vector<int> link(verts.begin(), verts.begin() + sp.link_size);
            std::vector<int> piece(verts.begin() + sp.link_size, verts.end());
            std::sort(link.begin(), link.end());
            std::sort(piece.begin(), piece.end());
            for (int v : clusters[i]) cluster_of[v] = i;
            for (int v : link) in_link[v] = 1;
            links.push_back(std::move(link));
            pieces.push_back(std::move(piece));
        }
    }
    return sp;
}

RegularityRun regularity_pipeline(const BipartiteGraph& host, const RootedTree& tree, const EmbedderConfig& cfg) {
    cfg.validate();
    if (cfg.check_preconditions) check_tree_preconditions(host, tree, cfg);

    RegularityRun run;
    // Step 1: partition, reduced graph, matching.
    try {
        run.partition = equitable_partition(host, cfg.s, cfg.eps, cfg.seed);
    } catch (const RegularityError& e) {
        throw EmbedError(EmbedStage::PartitionFailed, e.what());
    }
    run.partition.d = cfg.d;
    ReducedGraphOptions options;
    options.search_witnesses = cfg.search_witnesses;
    options.witness.random_budget = cfg.witness_budget;
    options.witness.seed = cfg.seed;
    run.reduced = reduced_graph(host, run.partition, cfg.eps, cfg.d, options);
    if (auto deficit = check_reduced_min_degree(run.reduced, 0.5 + cfg.gamma, cfg.d, cfg.eps)) {
        throw EmbedError(EmbedStage::PartitionFailed,
                         std::string("reduced graph cluster ") + side_char(deficit->side) + std::to_string(deficit->cluster) +
                             " has degree " + std::to_string(deficit->degree) + " < " + std::to_string(deficit->required));
    }
    auto matching = cluster_matching(run.reduced);
    if (auto* hall = std::get_if<HallViolator>(&matching)) {
        throw EmbedError(EmbedStage::MatchingFailed, "Hall violator of size " + std::to_string(hall->x_clusters.size()) +
                                                         " with " + std::to_string(hall->neighbourhood.size()) + " neighbours");
    }
    const auto& perm = std::get<ClusterMatching>(matching).perm;
    run.partition.relabel_y(perm);
    run.reduced.relabel_y(perm);

    // Step 3: linking zones.
    run.slices = slice_partition(run.partition, cfg.gamma, cfg.seed ^ 0x5bd1e995ULL);

    // Steps 2 and 4.
    Plan plan = Planner(tree, run.slices, cfg).run();

    // Step 5.
    Placer placer(host, tree, cfg, run.reduced, run.slices, plan);
    placer.run();
    run.embedding.map = placer.take_map();
    run.placements = placer.take_placements();
    run.element_order = placer.take_order();
    run.decomposition = std::move(plan.decomposition);
    run.groups = std::move(plan.groups);
    run.demands = std::move(plan.demands);
    run.capacity = plan.capacity;

    if (auto v = verify_embedding(host, GuestGraph::from_tree(tree), run.embedding)) {
        throw Error("regularity engine produced an invalid embedding: " + v->describe());
    }
    return run;
}

Embedding embed_tree_regularity(const BipartiteGraph& host, const RootedTree& tree, const EmbedderConfig& cfg) {
    return regularity_pipeline(host, tree, cfg).embedding;
}

Embedding embed_tree_greedy(const BipartiteGraph& host, const RootedTree& tree, std::uint64_t /*seed*/) {
    if (!tree.balanced()) throw EmbedError(EmbedStage::Precondition, "tree is not balanced");
    std::vector<char> used[2] = {std::vector<char>(host.size_a(), 0), std::vector<char>(host.size_b(), 0)};
    std::vector<int> residual[2] = {std::vector<int>(host.size_a()), std::vector<int>(host.size_b())};
    for (int a = 0; a < host.size_a(); ++a) residual[0][a] = host.degree(Side::A, a);
    for (int b = 0; b < host.size_b(); ++b) residual[1][b] = host.degree(Side::B, b);

    Embedding e;
    e.map.assign(tree.size(), HostVertex{});
    auto place = [&](int guest, Side s, int w) {
        const int k = s == Side::A ? 0 : 1;
        used[k][w] = 1;
        e.map[guest] = HostVertex{s, w};
        const int other = host.side_size(opposite(s));
        for (int x = 0; x < other; ++x)
            if (host.adjacent(s, w, x)) --residual[1 - k][x];
    };

    for (int v : tree.bfs_order()) {
        const Side s = tree.side(v);
        const int k = s == Side::A ? 0 : 1;
        int best = -1;
        const int parent = tree.parent(v);
        for (int w = 0; w < host.side_size(s); ++w) {
            if (used[k][w]) continue;
            if (parent != RootedTree::kNoParent && !host.adjacent(s, w, e.map[parent].index)) continue;
            if (best < 0 || residual[k][w] > residual[k][best]) best = w;
        }
        if (best < 0) {
            throw EmbedError(EmbedStage::PlacementExhausted, "greedy engine stuck at guest vertex " + std::to_string(v));
        }
        place(v, s, best);
    }
    if (auto violation = verify_embedding(host, GuestGraph::from_tree(tree), e)) {
        throw Error("greedy engine produced an invalid embedding: " + violation->describe());
    }
    return e;
}

Embedding embed_tree(const BipartiteGraph& host, const RootedTree& tree, const EmbedderConfig& cfg) {
    return cfg.engine == Engine::Regularity ? embed_tree_regularity(host, tree, cfg)
                                            : embed_tree_greedy(host, tree, cfg.seed);
}

JoinedForest join_forest(const BalancedForest& forest) {
    if (forest.vertex_count() == 0) throw EmbedError(EmbedStage::Precondition, "cannot join an empty forest");
    if (!forest.balanced()) throw EmbedError(EmbedStage::Precondition, "forest is not balanced");

    const int n = forest.vertex_count();
    std::vector<int> comp_parent(forest.component_count());
    std::iota(comp_parent.begin(), comp_parent.end(), 0);
    auto find = [&](int c) {
        while (comp_parent[c] != c) c = comp_parent[c] = comp_parent[comp_parent[c]];
        return c;
    };
    std::vector<int> degree(n);
    for (int v = 0; v < n; ++v) degree[v] = forest.degree(v);

    JoinedForest out;
    for (int joins = 0; joins + 1 < forest.component_count(); ++joins) {
        bool found = false;
        for (int a = 0; a < n && !found; ++a) {
            if (forest.side(a) != Side::A || degree[a] > 1) continue;
            const int ca = find(forest.component_of(a));
            for (int b = 0; b < n; ++b) {
                if (forest.side(b) != Side::B || degree[b] > 1) continue;
                const int cb = find(forest.component_of(b));
                if (cb == ca) continue;
                out.added_edges.emplace_back(a, b);
                ++degree[a];
                ++degree[b];
                comp_parent[cb] = ca;
                found = true;
                break;
            }
        }
        if (!found) throw EmbedError(EmbedStage::NoLeafPair, "no leaf pair across two components");
    }

    int root = -1;
    for (int c = 0; c < forest.component_count() && root < 0; ++c)
        if (forest.root_side(c) == Side::A) root = forest.offset(c) + forest.components()[c].root();
    for (int v = 0; v < n && root < 0; ++v)
        if (forest.side(v) == Side::A) root = v;

    std::vector<std::pair<int, int>> edges = forest.edges();
    edges.insert(edges.end(), out.added_edges.begin(), out.added_edges.end());
    out.tree = RootedTree::from_edges(n, edges, root);
    for (int v = 0; v < n; ++v)
        if (out.tree.side(v) != forest.side(v)) throw Error("joined tree breaks the forest 2-colouring");
    return out;
}

Embedding embed_forest(const BipartiteGraph& host, const BalancedForest& forest, const EmbedderConfig& cfg) {
    if (forest.vertex_count() == 0) return Embedding{};
    if (cfg.check_preconditions && cfg.engine == Engine::Regularity) {
        const int n = host.size_a();
        if (forest.vertex_count() > 2.0 * (1.0 - cfg.gamma) * n + kSlack) {
            throw EmbedError(EmbedStage::Precondition, "forest has more than 2(1-gamma)n vertices");
        }
        if (forest.max_degree() > cfg.c * n + kSlack) throw EmbedError(EmbedStage::Precondition, "forest degree exceeds c*n");
    }
    const JoinedForest joined = join_forest(forest);
    return embed_tree(host, joined.tree, cfg);
}

}  // namespace treepack
