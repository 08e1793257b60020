#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <variant>
#include <vector>

#include "treepack/graph.hpp"

namespace treepack {

class RegularityError : public Error {
public:
    using Error::Error;
};

/// Equitable split of both host sides into s clusters of size cluster_size,
/// plus exceptional leftovers.
struct RegularPartition {
    std::vector<std::vector<int>> clusters_x;  // side A
    std::vector<std::vector<int>> clusters_y;  // side B
    std::vector<int> exceptional_x;
    std::vector<int> exceptional_y;
    int cluster_size = 0;
    int s = 0;
    double eps = 0.0;
    double d = 0.0;
    std::uint64_t seed = 0;

    /// Reorders clusters_y so that X_i is paired with Y_{perm[i]} becomes X_i with Y_i.
    void relabel_y(std::span<const int> perm);
};

/// Subsets of X_i and Y_j whose density deviates from the pair density by more
/// than eps. Always a genuine violation of eps-regularity.
struct RegularityWitness {
    int i = -1;
    int j = -1;
    std::vector<int> subset_x;
    std::vector<int> subset_y;
    Fraction pair_density;
    Fraction subset_density;
    double deviation = 0.0;
};

struct WitnessSearchOptions {
    int random_budget = 32;  // random significant subset pairs after the structured candidates
    std::uint64_t seed = 0;
};

/// Smallest subset size that counts as eps-significant in a set of `size`.
int significant_size(int size, double eps);

/// Throws RegularityError when s clusters per side leave more than eps*n
/// exceptional vertices.
RegularPartition equitable_partition(const BipartiteGraph& g, int s, double eps, std::uint64_t seed);

/// Bounded search for a violation of eps-regularity of (X, Y). Candidates are
/// neighbourhood/degree-deviation sets followed by seeded random subsets; the
/// largest deviation found is returned. nullopt is not a proof of regularity.
std::optional<RegularityWitness> regularity_witness(const BipartiteGraph& g, std::span<const int> x,
                                                    std::span<const int> y, double eps,
                                                    const WitnessSearchOptions& options = {});

struct ReducedGraph {
    int s = 0;
    double d = 0.0;
    double eps = 0.0;
    std::vector<std::vector<Fraction>> density;  // density[i][j] = d(X_i, Y_j)
    std::vector<std::vector<bool>> adjacent;     // X_i ~ Y_j
    std::vector<RegularityWitness> witnesses;    // irregular dense pairs

    bool has_edge(int i, int j) const { return adjacent[i][j]; }
    int degree_x(int i) const;
    int degree_y(int j) const;
    int min_degree() const;
    void relabel_y(std::span<const int> perm);
};

struct ReducedGraphOptions {
    /// When false the reduced graph keeps every pair with density > d,
    /// without searching for irregularity witnesses.
    bool search_witnesses = true;
    WitnessSearchOptions witness;
};

ReducedGraph reduced_graph(const BipartiteGraph& g, const RegularPartition& partition, double eps, double d,
                           const ReducedGraphOptions& options = {});

struct DegreeDeficit {
    Side side = Side::A;
    int cluster = -1;
    int degree = 0;
    double required = 0.0;
};

/// nullopt when every cluster has reduced degree >= (lambda - (d + eps)) * s.
std::optional<DegreeDeficit> check_reduced_min_degree(const ReducedGraph& r, double lambda, double d, double eps);

struct ClusterMatching {
    std::vector<int> perm;  // X_i matched to Y_{perm[i]}
};

/// Set S of X-clusters with |N(S)| < |S|.
struct HallViolator {
    std::vector<int> x_clusters;
    std::vector<int> neighbourhood;
};

std::variant<ClusterMatching, HallViolator> cluster_matching(const ReducedGraph& r);

/// deg(v, targets) >= (base_density - eps) * |targets|, with v on side `side`.
bool typical_to(const BipartiteGraph& g, Side side, int v, std::span<const int> targets, double base_density,
                double eps);

/// Number of target sets v is typical to; targets[i] is paired with base_densities[i].
int typicality_profile(const BipartiteGraph& g, Side side, int v, std::span<const std::vector<int>> targets,
                       std::span<const double> base_densities, double eps);

}  // namespace treepack
