#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "treepack/embedder.hpp"
#include "treepack/tree.hpp"
#include "treepack/verify.hpp"

namespace treepack {

class PackError : public Error {
public:
    enum class Kind { Precondition, GuardViolated, ZoneOverflow, LedgerViolated, EngineFailed, VerifyFailed };
    PackError(Kind kind, const std::string& what, int index = -1) : Error(what), kind_(kind), index_(index) {}
    Kind kind() const { return kind_; }
    /// Offending forest or tree, -1 when not tied to one.
    int index() const { return index_; }

private:
    Kind kind_;
    int index_;
};

const char* to_string(PackError::Kind kind);

struct HubExtraction {
    int tree_id = 0;
    std::vector<int> hubs_a;  // tree vertices, in selection order
    std::vector<int> hubs_b;
    BalancedForest forest;              // T minus hubs, components rooted nearest the tree root
    std::vector<int> forest_to_tree;    // forest global id -> tree vertex
    std::vector<std::pair<int, int>> hub_edges;  // (parent, child) tree edges touching a hub
};

/// k highest-degree vertices of each class (ties by smallest index) and the residual forest.
HubExtraction extract_hubs(const RootedTree& tree, int k, int tree_id = 0);

struct PackerConfig {
    double gamma = 0.25;
    /// Tree degree coefficient, Delta(T_i) <= c sqrt(n).
    double c = 0.5;
    /// Hub count k = ceil(8 sqrt(n) / hub_c) unless hub_count is set.
    double hub_c = 8.0;
    std::optional<int> hub_count;
    /// Forest degree bound c*d(n) used by the ledger; unset takes the largest forest degree.
    std::optional<int> forest_degree_bound;
    Engine engine = Engine::Greedy;
    std::uint64_t seed = 0;
    /// Base configuration for the regularity engine; gamma is overridden per run.
    EmbedderConfig embedder;
    bool check_tree_degree = false;  // enforce Delta(T_i) <= c sqrt(n)

    int hubs_for(int n) const;
};

struct LedgerEntry {
    int index = 0;           // forest about to be embedded
    int min_degree = 0;      // delta(G_i)
    double required = 0.0;   // n - i * c d(n)
    double floor = 0.0;      // (1/2 + gamma) n
};

struct ForestPacking {
    int n = 0;
    double gamma = 0.0;
    int degree_bound = 0;
    std::vector<Embedding> embeddings;  // one per forest, indices into K_{n,n}
    std::vector<LedgerEntry> ledger;
};

/// Embeds the forests one after another into K_{n,n}, removing each image
/// before the next. Throws PackError.
ForestPacking pack_forests(int n, double gamma, const std::vector<BalancedForest>& forests, const PackerConfig& cfg);

struct TreePacking {
    int n = 0;
    int zone_size = 0;   // n' = floor(gamma n)
    int zone_start = 0;  // zones are [zone_start, n) on both sides
    int hub_count = 0;
    std::vector<HubExtraction> hubs;
    ForestPacking forests;  // over K_{n-n', n-n'}
    Packing packing;        // one full tree embedding per input tree
};

TreePacking pack_trees(int n, const std::vector<RootedTree>& trees, const PackerConfig& cfg);

}  // namespace treepack
