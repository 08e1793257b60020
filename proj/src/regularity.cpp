#include "treepack/regularity.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <string>

namespace treepack {

namespace {

constexpr double kSlack = 1e-9;

template <typename T>
std::vector<T> permute(const std::vector<T>& items, std::span<const int> perm) {
    std::vector<T> out;
    out.reserve(items.size());
    for (int p : perm) out.push_back(items[p]);
    return out;
}

// Candidate evaluation state for one (X, Y) pair.
class WitnessSearch {
public:
    WitnessSearch(const BipartiteGraph& g, std::span<const int> x, std::span<const int> y, double eps)
        : g_(g), x_(x.begin(), x.end()), y_(y.begin(), y.end()), eps_(eps) {
        kx_ = significant_size(static_cast<int>(x_.size()), eps);
        ky_ = significant_size(static_cast<int>(y_.size()), eps);
        pair_density_ = density(g, x_, y_);
    }

    void structured_candidates() {
        pivots(Side::A);
        pivots(Side::B);
        for (Side s : {Side::A, Side::B}) {
            const auto& own = s == Side::A ? x_ : y_;
            const auto& other = s == Side::A ? y_ : x_;
            std::vector<int> ranked = rank_by_degree(s, own, other);
            const int k = s == Side::A ? kx_ : ky_;
            std::vector<int> low(ranked.begin(), ranked.begin() + k);
            std::vector<int> high(ranked.end() - k, ranked.end());
            consider_side(s, low, other);
            consider_side(s, high, other);
        }
    }

    void random_candidates(int budget, std::uint64_t seed) {
        std::mt19937_64 rng(seed);
        std::vector<int> xs = x_;
        std::vector<int> ys = y_;
        for (int round = 0; round < budget; ++round) {
            std::shuffle(xs.begin(), xs.end(), rng);
            std::shuffle(ys.begin(), ys.end(), rng);
            const int sx = std::uniform_int_distribution<int>(kx_, static_cast<int>(xs.size()))(rng);
            const int sy = std::uniform_int_distribution<int>(ky_, static_cast<int>(ys.size()))(rng);
            std::vector<int> sub_x(xs.begin(), xs.begin() + sx);
            std::vector<int> sub_y(ys.begin(), ys.begin() + sy);
            consider(sub_x, sub_y);
            refine_from_y(sub_y);
        }
    }

    std::optional<RegularityWitness> result() && { return std::move(best_); }

private:
    // Vertices of `own` ordered by degree into `other`, ascending (ties by index).
    std::vector<int> rank_by_degree(Side s, const std::vector<int>& own, const std::vector<int>& other) const {
        std::vector<std::pair<int, int>> keyed;
        keyed.reserve(own.size());
        for (int v : own) keyed.emplace_back(degree_into(g_, s, v, other), v);
        std::sort(keyed.begin(), keyed.end());
        std::vector<int> out;
        out.reserve(keyed.size());
        for (auto [deg, v] : keyed) out.push_back(v);
        return out;
    }

    void consider_side(Side s, const std::vector<int>& own_subset, const std::vector<int>& other_subset) {
        if (s == Side::A) consider(own_subset, other_subset);
        else consider(other_subset, own_subset);
    }

    // Pivot on each vertex of side s (largest degree deviation first): its
    // neighbourhood and non-neighbourhood on the other side, against the most
    // and least attached significant sets on side s.
    void pivots(Side s) {
        const auto& own = s == Side::A ? x_ : y_;
        const auto& other = s == Side::A ? y_ : x_;
        const int k_own = s == Side::A ? kx_ : ky_;
        const int k_other = s == Side::A ? ky_ : kx_;
        const double mean = pair_density_.value() * static_cast<double>(other.size());
        std::vector<std::pair<double, int>> order;
        for (int v : own) order.emplace_back(-std::abs(degree_into(g_, s, v, other) - mean), v);
        std::sort(order.begin(), order.end());
        for (auto [key, pivot] : order) {
            std::vector<int> nbr, non_nbr;
            for (int w : other) (g_.adjacent(s, pivot, w) ? nbr : non_nbr).push_back(w);
            for (const auto* target : {&nbr, &non_nbr}) {
                if (static_cast<int>(target->size()) < k_other) continue;
                std::vector<int> ranked = rank_by_degree(s, own, *target);
                std::vector<int> low(ranked.begin(), ranked.begin() + k_own);
                std::vector<int> high(ranked.end() - k_own, ranked.end());
                consider_side(s, low, *target);
                consider_side(s, high, *target);
                if (s == Side::A) refine_from_x(high);
                else refine_from_y(high);
            }
        }
    }

    void refine_from_x(const std::vector<int>& sub_x) {
        std::vector<int> ranked = rank_by_degree(Side::B, y_, sub_x);
        consider(sub_x, std::vector<int>(ranked.end() - ky_, ranked.end()));
        consider(sub_x, std::vector<int>(ranked.begin(), ranked.begin() + ky_));
    }

    void refine_from_y(const std::vector<int>& sub_y) {
        std::vector<int> ranked = rank_by_degree(Side::A, x_, sub_y);
        consider(std::vector<int>(ranked.end() - kx_, ranked.end()), sub_y);
        consider(std::vector<int>(ranked.begin(), ranked.begin() + kx_), sub_y);
    }

    void consider(const std::vector<int>& sub_x, const std::vector<int>& sub_y) {
        if (static_cast<int>(sub_x.size()) < kx_ || static_cast<int>(sub_y.size()) < ky_) return;
        const Fraction sub = density(g_, sub_x, sub_y);
        const double deviation = std::abs(pair_density_.value() - sub.value());
        if (deviation <= eps_ + kSlack) return;
        if (best_ && deviation <= best_->deviation + kSlack) return;
        RegularityWitness w;
        w.subset_x = sub_x;
        w.subset_y = sub_y;
        std::sort(w.subset_x.begin(), w.subset_x.end());
        std::sort(w.subset_y.begin(), w.subset_y.end());
        w.pair_density = pair_density_;
        w.subset_density = sub;
        w.deviation = deviation;
        best_ = std::move(w);
    }

    const BipartiteGraph& g_;
    std::vector<int> x_;
    std::vector<int> y_;
    double eps_;
    int kx_ = 1;
    int ky_ = 1;
    Fraction pair_density_;
    std::optional<RegularityWitness> best_;
};

}  // namespace

int significant_size(int size, double eps) {
    const int k = static_cast<int>(std::ceil(eps * size - kSlack));
    return std::clamp(k, 1, std::max(size, 1));
}

void RegularPartition::relabel_y(std::span<const int> perm) { clusters_y = permute(clusters_y, perm); }

RegularPartition equitable_partition(const BipartiteGraph& g, int s, double eps, std::uint64_t seed) {
    if (s < 1) throw RegularityError("cluster count must be at least 1");
    if (eps <= 0.0 || eps >= 1.0) throw RegularityError("eps must lie in (0,1)");
    const int n = std::min(g.size_a(), g.size_b());
    const int m0 = n / s;
    if (m0 < 1) throw RegularityError("s=" + std::to_string(s) + " exceeds the side size");
    for (Side side : {Side::A, Side::B}) {
        const int size = g.side_size(side);
        const int leftover = size - s * m0;
        if (leftover > eps * size + kSlack) {
            throw RegularityError("s=" + std::to_string(s) + " leaves " + std::to_string(leftover) +
                                  " exceptional vertices, above eps*n=" + std::to_string(eps * size));
        }
    }

    RegularPartition p;
    p.s = s;
    p.cluster_size = m0;
    p.eps = eps;
    p.seed = seed;
    std::mt19937_64 rng(seed);
    for (Side side : {Side::A, Side::B}) {
        std::vector<int> verts(static_cast<std::size_t>(g.side_size(side)));
        std::iota(verts.begin(), verts.end(), 0);
        std::shuffle(verts.begin(), verts.end(), rng);
        auto& clusters = side == Side::A ? p.clusters_x : p.clusters_y;
        auto& exceptional = side == Side::A ? p.exceptional_x : p.exceptional_y;
        for (int c = 0; c < s; ++c) {
            std::vector<int> cluster(verts.begin() + c * m0, verts.begin() + (c + 1) * m0);
            std::sort(cluster.begin(), cluster.end());
            clusters.push_back(std::move(cluster));
        }
        exceptional.assign(verts.begin() + s * m0, verts.end());
        std::sort(exceptional.begin(), exceptional.end());
    }
    return p;
}

std::optional<RegularityWitness> regularity_witness(const BipartiteGraph& g, std::span<const int> x,
                                                    std::span<const int> y, double eps,
                                                    const WitnessSearchOptions& options) {
    if (x.empty() || y.empty()) return std::nullopt;
    WitnessSearch search(g, x, y, eps);
    search.structured_candidates();
    search.random_candidates(options.random_budget, options.seed);
    return std::move(search).result();
}

int ReducedGraph::degree_x(int i) const {
    return static_cast<int>(std::count(adjacent[i].begin(), adjacent[i].end(), true));
}

int ReducedGraph::degree_y(int j) const {
    int deg = 0;
    for (int i = 0; i < s; ++i) deg += adjacent[i][j] ? 1 : 0;
    return deg;
}

int ReducedGraph::min_degree() const {
    int best = s;
    for (int i = 0; i < s; ++i) best = std::min({best, degree_x(i), degree_y(i)});
    return best;
}

void ReducedGraph::relabel_y(std::span<const int> perm) {
    for (int i = 0; i < s; ++i) {
        density[i] = permute(density[i], perm);
        std::vector<bool> row;
        for (int p : perm) row.push_back(adjacent[i][p]);
        adjacent[i] = std::move(row);
    }
    std::vector<int> inverse(perm.size());
    for (std::size_t k = 0; k < perm.size(); ++k) inverse[perm[k]] = static_cast<int>(k);
    for (auto& w : witnesses) w.j = inverse[w.j];
}

ReducedGraph reduced_graph(const BipartiteGraph& g, const RegularPartition& partition, double eps, double d,
                           const ReducedGraphOptions& options) {
    ReducedGraph r;
    r.s = partition.s;
    r.d = d;
    r.eps = eps;
    r.density.assign(r.s, std::vector<Fraction>(r.s));
    r.adjacent.assign(r.s, std::vector<bool>(r.s, false));
    for (int i = 0; i < r.s; ++i) {
        for (int j = 0; j < r.s; ++j) {
            const auto& x = partition.clusters_x[i];
            const auto& y = partition.clusters_y[j];
            r.density[i][j] = density(g, x, y);
            if (r.density[i][j].value() <= d) continue;
            if (options.search_witnesses) {
                WitnessSearchOptions w = options.witness;
                w.seed = options.witness.seed ^ (0x9e3779b97f4a7c15ULL * static_cast<std::uint64_t>(i * r.s + j + 1));
                if (auto witness = regularity_witness(g, x, y, eps, w)) {
                    witness->i = i;
                    witness->j = j;
                    r.witnesses.push_back(std::move(*witness));
                    continue;
                }
            }
            r.adjacent[i][j] = true;
        }
    }
    return r;
}

std::optional<DegreeDeficit> check_reduced_min_degree(const ReducedGraph& r, double lambda, double d, double eps) {
    const double required = (lambda - (d + eps)) * r.s;
    for (int i = 0; i < r.s; ++i) {
        const int deg = r.degree_x(i);
        if (deg < required - kSlack) return DegreeDeficit{Side::A, i, deg, required};
    }
    for (int j = 0; j < r.s; ++j) {
        const int deg = r.degree_y(j);
        if (deg < required - kSlack) return DegreeDeficit{Side::B, j, deg, required};
    }
    return std::nullopt;
}

std::variant<ClusterMatching, HallViolator> cluster_matching(const ReducedGraph& r) {
    const int s = r.s;
    std::vector<int> match_x(s, -1), match_y(s, -1);
    std::vector<char> seen;
    auto augment = [&](auto&& self, int i) -> bool {
        for (int j = 0; j < s; ++j) {
            if (!r.adjacent[i][j] || seen[j]) continue;
            seen[j] = 1;
            if (match_y[j] < 0 || self(self, match_y[j])) {
                match_x[i] = j;
                match_y[j] = i;
                return true;
            }
        }
        return false;
    };
    for (int i = 0; i < s; ++i) {
        seen.assign(s, 0);
        if (augment(augment, i)) continue;
        // Alternating-path closure from the exposed cluster i is a Hall violator.
        std::vector<char> in_s(s, 0), in_n(s, 0);
        std::vector<int> stack{i};
        in_s[i] = 1;
        while (!stack.empty()) {
            const int u = stack.back();
            stack.pop_back();
            for (int j = 0; j < s; ++j) {
                if (!r.adjacent[u][j] || in_n[j]) continue;
                in_n[j] = 1;
                const int w = match_y[j];
                if (w >= 0 && !in_s[w]) {
                    in_s[w] = 1;
                    stack.push_back(w);
                }
            }
        }
        HallViolator h;
        for (int k = 0; k < s; ++k) {
            if (in_s[k]) h.x_clusters.push_back(k);
            if (in_n[k]) h.neighbourhood.push_back(k);
        }
        return h;
    }
    return ClusterMatching{match_x};
}

bool typical_to(const BipartiteGraph& g, Side side, int v, std::span<const int> targets, double base_density,
                double eps) {
    const int deg = degree_into(g, side, v, targets);
    return deg >= (base_density - eps) * static_cast<double>(targets.size()) - kSlack;
}

int typicality_profile(const BipartiteGraph& g, Side side, int v, std::span<const std::vector<int>> targets,
                       std::span<const double> base_densities, double eps) {
    if (targets.size() != base_densities.size()) throw RegularityError("one base density per target set");
    int count = 0;
    for (std::size_t i = 0; i < targets.size(); ++i)
        count += typical_to(g, side, v, targets[i], base_densities[i], eps) ? 1 : 0;
    return count;
}

}  // namespace treepack
