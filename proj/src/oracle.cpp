#include "treepack/oracle.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <map>
#include <random>

namespace treepack {

namespace {

constexpr double kSlack = 1e-9;

struct PreparedGuest {
    std::vector<int> order;
    std::vector<std::vector<int>> earlier;  // neighbours placed before, per position
    std::vector<int> later;                 // neighbours placed after, per position
};

PreparedGuest prepare(const GuestGraph& g) {
    const int n = g.vertex_count();
    std::vector<std::vector<int>> adj(n);
    for (auto [u, v] : g.edges) {
        adj[u].push_back(v);
        adj[v].push_back(u);
    }
    PreparedGuest p;
    std::vector<int> pos(n, -1);
    for (int s = 0; s < n; ++s) {
        if (pos[s] >= 0) continue;
        pos[s] = static_cast<int>(p.order.size());
        p.order.push_back(s);
        for (std::size_t k = p.order.size() - 1; k < p.order.size(); ++k)
            for (int w : adj[p.order[k]])
                if (pos[w] < 0) {
                    pos[w] = static_cast<int>(p.order.size());
                    p.order.push_back(w);
                }
    }
    p.earlier.resize(n);
    p.later.assign(n, 0);
    for (int k = 0; k < n; ++k) {
        for (int w : adj[p.order[k]]) {
            if (pos[w] < k) p.earlier[k].push_back(w);
            else ++p.later[k];
        }
    }
    return p;
}

std::vector<int> twin_classes(const BipartiteGraph& host, Side side) {
    std::map<std::vector<int>, int> ids;
    std::vector<int> out(host.side_size(side));
    for (int v = 0; v < host.side_size(side); ++v) {
        auto row = host.neighbors(side, v);
        out[v] = ids.emplace(std::vector<int>(row.begin(), row.end()), static_cast<int>(ids.size())).first->second;
    }
    return out;
}

class Search {
public:
    Search(const BipartiteGraph& host, const std::vector<GuestGraph>& guests, const SearchOptions& options)
        : host_(host), guests_(guests), options_(options) {
        for (const auto& g : guests) prepared_.push_back(prepare(g));
        owner_.assign(static_cast<std::size_t>(host.size_a()) * host.size_b(), -1);
        for (Side s : {Side::A, Side::B}) {
            const int k = s == Side::A ? 0 : 1;
            free_[k].resize(host.side_size(s));
            for (int v = 0; v < host.side_size(s); ++v) free_[k][v] = host.degree(s, v);
            stamp_[k].assign(host.side_size(s), -1);
            twin_[k] = twin_classes(host, s);
        }
        maps_.resize(guests.size());
        for (std::size_t i = 0; i < guests.size(); ++i) maps_[i].assign(guests[i].vertex_count(), HostVertex{});
    }

    SearchResult run() {
        if (place(0, 0)) return SearchResult::Found;
        return exceeded_ ? SearchResult::BudgetExceeded : SearchResult::Unsat;
    }

    std::int64_t nodes() const { return nodes_; }
    const std::vector<std::vector<HostVertex>>& maps() const { return maps_; }

private:
    int& owner(Side s, int v, int w) {
        const int a = s == Side::A ? v : w;
        const int b = s == Side::A ? w : v;
        return owner_[static_cast<std::size_t>(a) * host_.size_b() + b];
    }

    bool place(std::size_t g, int k) {
        if (g == guests_.size()) return true;
        const PreparedGuest& pg = prepared_[g];
        if (k == static_cast<int>(pg.order.size())) return place(g + 1, 0);
        if (++nodes_ > options_.budget) {
            exceeded_ = true;
            return false;
        }
        const int v = pg.order[k];
        const Side s = guests_[g].sides[v];
        const int si = s == Side::A ? 0 : 1;
        const int stamp = static_cast<int>(g);
        const auto& earlier = pg.earlier[k];
        std::vector<char> tried;
        if (options_.symmetry) tried.assign(host_.side_size(s), 0);

        for (int w = 0; w < host_.side_size(s); ++w) {
            if (stamp_[si][w] == stamp) continue;
            bool ok = free_[si][w] - static_cast<int>(earlier.size()) >= pg.later[k];
            for (std::size_t e = 0; ok && e < earlier.size(); ++e) {
                const HostVertex& hu = maps_[g][earlier[e]];
                ok = host_.adjacent(s, w, hu.index) && owner(s, w, hu.index) < 0;
            }
            if (!ok) continue;
            if (options_.symmetry && free_[si][w] == host_.degree(s, w)) {
                if (tried[twin_[si][w]]) continue;
                tried[twin_[si][w]] = 1;
            }

            const int prev_stamp = stamp_[si][w];
            stamp_[si][w] = stamp;
            maps_[g][v] = HostVertex{s, w};
            for (int u : earlier) {
                const int x = maps_[g][u].index;
                owner(s, w, x) = stamp;
                --free_[si][w];
                --free_[1 - si][x];
            }
            if (place(g, k + 1)) return true;
            for (int u : earlier) {
                const int x = maps_[g][u].index;
                owner(s, w, x) = -1;
                ++free_[si][w];
                ++free_[1 - si][x];
            }
            stamp_[si][w] = prev_stamp;
            if (exceeded_) return false;
        }
        return false;
    }

    const BipartiteGraph& host_;
    const std::vector<GuestGraph>& guests_;
    SearchOptions options_;
    std::vector<PreparedGuest> prepared_;
    std::vector<int> owner_;
    std::vector<int> free_[2];
    std::vector<int> stamp_[2];  // last guest whose image occupies the vertex
    std::vector<int> twin_[2];
    std::vector<std::vector<HostVertex>> maps_;
    std::int64_t nodes_ = 0;
    bool exceeded_ = false;
};

}  // namespace

const char* to_string(SearchResult r) {
    switch (r) {
        case SearchResult::Found: return "FOUND";
        case SearchResult::Unsat: return "UNSAT";
        case SearchResult::BudgetExceeded: return "BUDGET_EXCEEDED";
    }
    return "UNKNOWN";
}

SearchReport brute_force_pack(const BipartiteGraph& host, const std::vector<GuestGraph>& guests,
                              const SearchOptions& options, std::string instance) {
    const auto start = std::chrono::steady_clock::now();
    SearchReport report;
    report.instance = std::move(instance);
    std::int64_t guest_edges = 0;
    for (const auto& g : guests) guest_edges += g.edge_count();
    auto finish = [&] {
        report.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        return report;
    };
    if (guest_edges > host.edge_count()) {
        report.result = SearchResult::Unsat;
        return finish();
    }
    Search search(host, guests, options);
    report.result = search.run();
    report.nodes = search.nodes();
    if (report.result == SearchResult::Found) {
        Packing packing;
        for (std::size_t i = 0; i < guests.size(); ++i) {
            Embedding e;
            e.guest_id = "G" + std::to_string(i);
            e.map = search.maps()[i];
            packing.push_back(PackedGuest{guests[i], std::move(e)});
        }
        if (auto v = verify_packing(host, packing)) throw Error("search produced an invalid packing: " + v->describe());
        report.packing = std::move(packing);
    }
    return finish();
}

GuestGraph path_guest(int vertices) {
    GuestGraph g;
    for (int v = 0; v < vertices; ++v) g.sides.push_back(v % 2 == 0 ? Side::A : Side::B);
    for (int v = 0; v + 1 < vertices; ++v) g.edges.emplace_back(v, v + 1);
    return g;
}

SearchReport k53_paths_unsat(const SearchOptions& options) {
    const std::vector<GuestGraph> guests(3, path_guest(6));
    return brute_force_pack(BipartiteGraph::complete(5, 3), guests, options, "three 6-vertex paths into K_{5,3}");
}

GuestGraph double_star(int k) {
    if (k < 1) throw Error("double star needs k >= 1");
    GuestGraph g;
    g.sides.assign(2 * k, Side::A);
    g.sides[1] = Side::B;
    g.edges.emplace_back(0, 1);
    for (int v = 2; v <= k; ++v) {
        g.sides[v] = Side::B;
        g.edges.emplace_back(0, v);
    }
    for (int v = k + 1; v < 2 * k; ++v) g.edges.emplace_back(v, 1);
    return g;
}

Packing double_star_decomposition(int n) {
    if (n < 1) throw Error("double star decomposition needs n >= 1");
    // Copy i: A-center i sees all of B; B-center i also sees the shared A-vertices n..2n-2.
    const GuestGraph guest = double_star(n);
    Packing packing;
    for (int i = 0; i < n; ++i) {
        Embedding e;
        e.guest_id = "D" + std::to_string(i);
        e.map.assign(2 * n, HostVertex{});
        e.map[0] = HostVertex{Side::A, i};
        e.map[1] = HostVertex{Side::B, i};
        int leaf = 2;
        for (int b = 0; b < n; ++b)
            if (b != i) e.map[leaf++] = HostVertex{Side::B, b};
        for (int a = n; a < 2 * n - 1; ++a) e.map[leaf++] = HostVertex{Side::A, a};
        packing.push_back(PackedGuest{guest, std::move(e)});
    }
    return packing;
}

DoubleStarBound double_star_copy_bound(int n, double eps) {
    if (!(eps > 0.0 && eps < 0.5)) throw Error("eps must lie in (0, 1/2)");
    if (n < 1) throw Error("n must be positive");
    DoubleStarBound r;
    r.n = n;
    r.eps = eps;
    r.k = static_cast<int>(std::floor((1.0 - eps) * n + kSlack));
    r.bound = static_cast<std::int64_t>(std::floor(2.0 * eps * n + 1.0 + kSlack));
    const std::int64_t per_copy = 2LL * r.k - 1;
    const std::int64_t edges = static_cast<std::int64_t>(n) * n;
    r.needed = per_copy > 0 ? (edges + per_copy - 1) / per_copy : edges;
    r.impossible = r.bound < r.needed;
    r.max_coverage = std::min(1.0, static_cast<double>(r.bound) * per_copy / static_cast<double>(edges));
    return r;
}

CopyMaximum max_disjoint_copies(const BipartiteGraph& host, const GuestGraph& guest, const SearchOptions& options) {
    CopyMaximum out;
    for (int m = 1;; ++m) {
        std::vector<GuestGraph> guests(m, guest);
        out.runs.push_back(brute_force_pack(host, guests, options, std::to_string(m) + " copies"));
        const SearchResult r = out.runs.back().result;
        if (r == SearchResult::Found) {
            out.lower = m;
            continue;
        }
        out.exact = r == SearchResult::Unsat;
        return out;
    }
}

RootedTree log_star_tree(int n, double alpha) {
    if (n < 2) throw TreeError("log-star tree needs n >= 2");
    if (!(alpha > 0.0)) throw TreeError("alpha must be positive");
    const int q = static_cast<int>(std::ceil(alpha * std::log2(static_cast<double>(n)) - kSlack));
    if (q < 1 || n - 1 < q) {
        throw TreeError("budget of " + std::to_string(n) + " vertices too small for " + std::to_string(q) + " stars");
    }
    const int leaves = n - 1 - q;
    // Copy c occupies ids [c n, (c+1) n): r, then q centers, then leaves star by star.
    std::vector<int> parent(2 * n, -1);
    for (int c = 0; c < 2; ++c) {
        const int base = c * n;
        int next = base + 1 + q;
        for (int j = 0; j < q; ++j) {
            const int center = base + 1 + j;
            parent[center] = base;
            const int count = leaves / q + (j < leaves % q ? 1 : 0);
            for (int l = 0; l < count; ++l) parent[next++] = center;
        }
    }
    parent[n] = 0;
    return RootedTree::from_parents(std::move(parent), 0);
}

ProbeReport empirical_containment_probe(int n, double alpha, double p, int trials, std::uint64_t seed,
                                        std::int64_t budget_per_trial) {
    const GuestGraph guest = GuestGraph::from_tree(log_star_tree(n, alpha));
    ProbeReport r;
    r.trials = trials;
    r.seed = seed;
    std::mt19937_64 rng(seed);
    SearchOptions options;
    options.budget = budget_per_trial;
    for (int t = 0; t < trials; ++t) {
        const BipartiteGraph host = BipartiteGraph::random(n, n, p, rng());
        switch (brute_force_pack(host, {guest}, options).result) {
            case SearchResult::Found: ++r.found; break;
            case SearchResult::Unsat: ++r.unsat; break;
            case SearchResult::BudgetExceeded: ++r.budget_exceeded; break;
        }
    }
    r.frequency = trials > 0 ? static_cast<double>(r.found) / trials : 0.0;
    return r;
}

}  // namespace treepack
