#include "treepack/decomposition.hpp"

#include <algorithm>
#include <numeric>
#include <string>

namespace treepack {

namespace {

constexpr double kSlack = 1e-9;

// Components of T - S, each rooted at its vertex closest to the tree root.
std::vector<TreePiece> components_without(const RootedTree& tree, const std::vector<char>& is_seed) {
    std::vector<TreePiece> pieces;
    for (int v : tree.bfs_order()) {
        if (is_seed[v]) continue;
        const int p = tree.parent(v);
        if (p != RootedTree::kNoParent && !is_seed[p]) continue;
        TreePiece piece;
        piece.root = v;
        std::vector<int> stack{v};
        while (!stack.empty()) {
            const int u = stack.back();
            stack.pop_back();
            piece.vertices.push_back(u);
            for (int c : tree.children(u))
                if (!is_seed[c]) stack.push_back(c);
        }
        std::sort(piece.vertices.begin(), piece.vertices.end());
        pieces.push_back(std::move(piece));
    }
    std::sort(pieces.begin(), pieces.end(), [](const TreePiece& a, const TreePiece& b) { return a.root < b.root; });
    return pieces;
}

}  // namespace

std::vector<int> BetaDecomposition::piece_of(int vertex_count) const {
    std::vector<int> out(vertex_count, -1);
    for (int i = 0; i < static_cast<int>(pieces.size()); ++i)
        for (int v : pieces[i].vertices) out[v] = i;
    return out;
}

BetaDecomposition beta_decompose(const RootedTree& tree, double beta) {
    if (!(beta > 0.0 && beta < 1.0)) throw DecompositionError("beta must lie in (0,1)");
    const int n = tree.size();
    const int t = tree.edge_count();
    if (t <= 1.0 / beta + kSlack) {
        throw DecompositionError("tree too small: t=" + std::to_string(t) + " must exceed 1/beta");
    }
    const double limit = beta * t;

    std::vector<int> size(n, 1);
    const auto& order = tree.bfs_order();
    for (auto it = order.rbegin(); it != order.rend(); ++it)
        if (*it != tree.root()) size[tree.parent(*it)] += size[*it];

    // Deepest first; a vertex's size is final once all deeper vertices are done.
    std::vector<int> by_depth(n);
    std::iota(by_depth.begin(), by_depth.end(), 0);
    std::sort(by_depth.begin(), by_depth.end(), [&](int a, int b) {
        return tree.depth(a) != tree.depth(b) ? tree.depth(a) > tree.depth(b) : a < b;
    });

    std::vector<char> is_seed(n, 0);
    for (int v : by_depth) {
        if (size[v] <= limit + kSlack) continue;
        is_seed[v] = 1;
        const int detached = size[v];
        for (int u = tree.parent(v); u != RootedTree::kNoParent; u = tree.parent(u)) size[u] -= detached;
        size[v] = 0;
    }
    is_seed[tree.root()] = 1;

    BetaDecomposition dec;
    dec.beta = beta;
    dec.t = t;
    for (int v = 0; v < n; ++v)
        if (is_seed[v]) dec.seeds.push_back(v);
    dec.pieces = components_without(tree, is_seed);
    for (const auto& piece : dec.pieces)
        if (piece.root != tree.root()) dec.linking.push_back(piece.root);
    std::sort(dec.linking.begin(), dec.linking.end());
    check_decomposition(tree, dec);
    return dec;
}

void check_decomposition(const RootedTree& tree, const BetaDecomposition& dec) {
    const int n = tree.size();
    auto fail = [](const std::string& what) { throw DecompositionError("invalid decomposition: " + what); };

    std::vector<char> is_seed(n, 0);
    for (int v : dec.seeds) {
        if (v < 0 || v >= n) fail("seed out of range");
        is_seed[v] = 1;
    }
    if (!is_seed[tree.root()]) fail("root is not a seed");
    if (static_cast<double>(dec.seeds.size()) >= 1.0 / dec.beta + 2.0) fail("too many seeds");

    const std::vector<TreePiece> expected = components_without(tree, is_seed);
    if (expected.size() != dec.pieces.size()) fail("pieces are not the components of T - S");
    for (std::size_t i = 0; i < expected.size(); ++i) {
        if (expected[i].root != dec.pieces[i].root || expected[i].vertices != dec.pieces[i].vertices) {
            fail("piece " + std::to_string(i) + " differs from the component of T - S");
        }
        if (dec.pieces[i].vertices.size() > dec.beta * dec.t + kSlack) fail("piece larger than beta*t");
    }

    std::vector<int> linking;
    for (const auto& piece : dec.pieces) {
        if (piece.root == tree.root()) continue;
        linking.push_back(piece.root);
        if (!is_seed[tree.parent(piece.root)]) fail("parent of a linking vertex is not a seed");
    }
    std::sort(linking.begin(), linking.end());
    if (linking != dec.linking) fail("linking set mismatch");
}

std::vector<ParityCount> piece_parity_counts(const RootedTree& tree, const BetaDecomposition& dec) {
    std::vector<ParityCount> out;
    std::size_t covered = dec.seeds.size();
    for (const auto& piece : dec.pieces) {
        ParityCount c;
        for (int v : piece.vertices) {
            if (v < 0 || v >= tree.size()) throw DecompositionError("decomposition does not match tree");
            (tree.depth(v) % 2 == 0 ? c.even : c.odd) += 1;
        }
        covered += piece.vertices.size();
        out.push_back(c);
    }
    if (covered != static_cast<std::size_t>(tree.size())) throw DecompositionError("decomposition does not match tree");
    return out;
}

}  // namespace treepack
