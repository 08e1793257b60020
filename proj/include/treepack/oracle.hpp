#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "treepack/graph.hpp"
#include "treepack/tree.hpp"
#include "treepack/verify.hpp"

namespace treepack {

enum class SearchResult { Found, Unsat, BudgetExceeded };

const char* to_string(SearchResult r);

struct SearchReport {
    std::string instance;
    SearchResult result = SearchResult::Unsat;
    std::optional<Packing> packing;  // set iff Found
    std::int64_t nodes = 0;
    double seconds = 0.0;
};

struct SearchOptions {
    std::int64_t budget = 100'000'000;
    /// Try one representative per class of untouched host twins.
    bool symmetry = true;
};

/// Exhaustive backtracking for an edge-disjoint, side-respecting packing of
/// `guests` into `host`. Unsat is reported only after the full search space is exhausted.
SearchReport brute_force_pack(const BipartiteGraph& host, const std::vector<GuestGraph>& guests,
                              const SearchOptions& options = {}, std::string instance = "");

/// Path on `vertices` vertices, alternating sides from side A.
GuestGraph path_guest(int vertices);

/// Three 6-vertex paths into K_{5,3}.
SearchReport k53_paths_unsat(const SearchOptions& options = {});

/// Double star D_{k,k}: vertex 0 is the A-center, 1 the B-center, 2..k the
/// B-leaves of 0, k+1..2k-1 the A-leaves of 1.
GuestGraph double_star(int k);

/// Decomposition of K_{2n-1,n} (side A has 2n-1 vertices) into n copies of D_{n,n}.
Packing double_star_decomposition(int n);

struct DoubleStarBound {
    int n = 0;
    double eps = 0.0;
    int k = 0;                  // floor((1-eps) n), copies are D_{k,k}
    std::int64_t bound = 0;     // floor(2 eps n + 1)
    std::int64_t needed = 0;    // ceil(n^2 / (2k - 1))
    bool impossible = false;    // bound < needed
    double max_coverage = 0.0;  // bound (2k-1) / n^2, capped at 1
};

DoubleStarBound double_star_copy_bound(int n, double eps);

struct CopyMaximum {
    int lower = 0;       // largest copy count found
    bool exact = false;  // lower+1 copies proved impossible
    std::vector<SearchReport> runs;
};

/// Largest number of edge-disjoint copies of `guest` in `host`, by increasing count.
CopyMaximum max_disjoint_copies(const BipartiteGraph& host, const GuestGraph& guest, const SearchOptions& options = {});

/// Two copies of (r joined to the centers of q = ceil(alpha log2 n) stars with
/// sizes differing by at most one, n vertices per copy), joined at the r's.
RootedTree log_star_tree(int n, double alpha);

struct ProbeReport {
    int trials = 0;
    int found = 0;
    int unsat = 0;
    int budget_exceeded = 0;
    double frequency = 0.0;  // found / trials
    std::uint64_t seed = 0;
};

/// Fraction of random G(n,n,p) hosts that contain log_star_tree(n, alpha).
ProbeReport empirical_containment_probe(int n, double alpha, double p, int trials, std::uint64_t seed,
                                        std::int64_t budget_per_trial = 1'000'000);

}  // namespace treepack
