#pragma once

#include <vector>

#include "treepack/tree.hpp"

namespace treepack {

class DecompositionError : public Error {
public:
    using Error::Error;
};

struct TreePiece {
    int root = -1;
    std::vector<int> vertices;  // sorted
};

/// Seeds S and pieces (the components of T - S) of a rooted tree, each piece
/// with at most beta * t vertices.
struct BetaDecomposition {
    std::vector<int> seeds;    // sorted, contains the tree root
    std::vector<TreePiece> pieces;  // ordered by root index
    std::vector<int> linking;  // piece roots other than the tree root, sorted
    double beta = 0.0;
    int t = 0;                 // edge count of the tree

    /// Piece index for every vertex, -1 for seeds.
    std::vector<int> piece_of(int vertex_count) const;
};

/// Seeds are chosen bottom-up: the deepest vertex (ties: smallest index) whose
/// remaining subtree has more than beta*t vertices becomes a seed and its
/// subtree is detached; the root is added last. All invariants are checked
/// before returning.
BetaDecomposition beta_decompose(const RootedTree& tree, double beta);

/// Throws DecompositionError naming the first broken invariant.
void check_decomposition(const RootedTree& tree, const BetaDecomposition& dec);

struct ParityCount {
    int even = 0;  // x_P: vertices at even depth in the whole tree
    int odd = 0;   // y_P
    friend bool operator==(const ParityCount&, const ParityCount&) = default;
};

std::vector<ParityCount> piece_parity_counts(const RootedTree& tree, const BetaDecomposition& dec);

}  // namespace treepack
