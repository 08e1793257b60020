#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "treepack/assignment.hpp"
#include "treepack/decomposition.hpp"
#include "treepack/graph.hpp"
#include "treepack/regularity.hpp"
#include "treepack/tree.hpp"
#include "treepack/verify.hpp"

namespace treepack {

enum class Engine { Regularity, Greedy };

const char* to_string(Engine engine);
Engine parse_engine(const std::string& name);

enum class EmbedStage {
    Precondition,
    PartitionFailed,
    MatchingFailed,
    SeedBoundExceeded,
    AssignmentFailed,
    PlacementExhausted,
    NoLeafPair,
};

const char* to_string(EmbedStage stage);

class EmbedError : public Error {
public:
    EmbedError(EmbedStage stage, const std::string& detail)
        : Error(std::string(to_string(stage)) + ": " + detail), stage_(stage) {}
    EmbedStage stage() const { return stage_; }

private:
    EmbedStage stage_;
};

struct EmbedderConfig {
    double gamma = 0.3;
    double eps = 0.05;
    double d = 0.2;
    int s = 4;
    double c = 0.05;  // Delta(T) <= c n
    Engine engine = Engine::Regularity;
    std::uint64_t seed = 0;
    /// Fixed beta for the tree decomposition; unset selects the first workable
    /// value from beta_schedule().
    std::optional<double> beta;
    /// Assignment slack: groups are filled up to (1 - 7 mu) m.
    double mu = 0.0;
    /// Proof-constant wiring: mu = c, assignment hypotheses enforced, seed/link bound asserted.
    bool proof_preset = false;
    bool search_witnesses = true;
    int witness_budget = 32;
    bool check_preconditions = true;

    /// eps = (gamma/120)^2, d = 5 sqrt(eps), c = eps gamma / (50 K0^2),
    /// beta = eps gamma / K0^4, mu = c, with K0 stood in by s.
    static EmbedderConfig proof_constants(double gamma, int s);
    /// Seeds may miss typicality to at most this many L-slices.
    double typical_deficit() const;
    void validate() const;
};

/// Candidate beta values tried in order when EmbedderConfig::beta is unset.
std::vector<double> beta_schedule();

/// Every cluster split into an L-slice of ceil((gamma/4) m0) vertices and a P-slice.
struct SlicedPartition {
    int s = 0;
    int link_size = 0;
    int piece_size = 0;  // m
    std::vector<std::vector<int>> x_link, x_piece, y_link, y_piece;
    std::vector<int> cluster_of_a, cluster_of_b;  // -1 for exceptional vertices
    std::vector<char> in_link_a, in_link_b;

    const std::vector<int>& link(Side side, int i) const { return side == Side::A ? x_link[i] : y_link[i]; }
    const std::vector<int>& piece(Side side, int i) const { return side == Side::A ? x_piece[i] : y_piece[i]; }
    int cluster_of(Side side, int v) const { return side == Side::A ? cluster_of_a[v] : cluster_of_b[v]; }
    bool in_link(Side side, int v) const { return (side == Side::A ? in_link_a[v] : in_link_b[v]) != 0; }
};

/// Throws EmbedError(PartitionFailed) when (gamma/4) m0 < 1 or nothing is left for P-slices.
SlicedPartition slice_partition(const RegularPartition& partition, double gamma, std::uint64_t seed);

enum class PlacementRole { Seed, Linking, Interior };

struct Placement {
    PlacementRole role = PlacementRole::Interior;
    int cluster = -1;
    bool link_slice = false;
    int piece = -1;           // -1 for seeds
    int atypical_links = 0;   // seeds: L-slices the image is not typical to
};

/// Full trace of a regularity-engine run.
struct RegularityRun {
    Embedding embedding;
    RegularPartition partition;  // Y clusters relabelled along the matching
    ReducedGraph reduced;
    SlicedPartition slices;
    BetaDecomposition decomposition;
    Groups groups;                         // piece indices per cluster pair
    std::vector<DemandPair> demands;       // per piece, as fed to the assignment
    double capacity = 0.0;                 // per-group P-slice budget
    std::vector<Placement> placements;     // per guest vertex
    std::vector<int> element_order;        // seeds as vertex ids, pieces as -(index+1)
};

RegularityRun regularity_pipeline(const BipartiteGraph& host, const RootedTree& tree, const EmbedderConfig& cfg);

Embedding embed_tree_regularity(const BipartiteGraph& host, const RootedTree& tree, const EmbedderConfig& cfg);

/// Places vertices in BFS order, each on an unused host neighbour of its
/// parent's image with the most unused neighbours (ties by index); the root
/// goes to side A.
Embedding embed_tree_greedy(const BipartiteGraph& host, const RootedTree& tree, std::uint64_t seed = 0);

/// Dispatches on cfg.engine.
Embedding embed_tree(const BipartiteGraph& host, const RootedTree& tree, const EmbedderConfig& cfg);

struct JoinedForest {
    RootedTree tree;  // vertex ids are the forest's global ids
    std::vector<std::pair<int, int>> added_edges;
};

/// Joins components through leaf pairs (a in A_F, b in B_F, distinct
/// components), lexicographically smallest first.
JoinedForest join_forest(const BalancedForest& forest);

/// Embeds a balanced forest with A_F on host side A, via join_forest and the
/// configured engine. The map covers forest vertices only.
Embedding embed_forest(const BipartiteGraph& host, const BalancedForest& forest, const EmbedderConfig& cfg);

}  // namespace treepack
