#pragma once

#include <cstdint>
#include <vector>

#include "treepack/tree.hpp"

namespace treepack {

/// Random balanced tree with `per_class` vertices per class and degree at most
/// `max_degree`. Vertices are added with alternating classes, each attached to
/// a uniformly random opposite-class vertex still below the cap. Root is 0.
RootedTree gen_tree(int per_class, int max_degree, std::uint64_t seed);

/// Balanced forest of `components` random balanced trees whose class sizes sum
/// to `per_class`; all roots on side A.
BalancedForest gen_forest(int per_class, int components, int max_degree, std::uint64_t seed);

/// Uniformly random rooted tree on `vertices` vertices (Pruefer sequence), root 0.
RootedTree random_tree(int vertices, std::uint64_t seed);

}  // namespace treepack
