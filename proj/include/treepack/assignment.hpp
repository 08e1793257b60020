#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "treepack/graph.hpp"

namespace treepack {

struct DemandPair {
    std::int64_t x = 0;
    std::int64_t y = 0;
};

class AssignmentError : public Error {
public:
    enum class Kind { PreconditionViolated, AssignmentFailed };
    AssignmentError(Kind kind, const std::string& what) : Error(what), kind_(kind) {}
    Kind kind() const { return kind_; }

private:
    Kind kind_;
};

/// Demand pairs to be split into s groups, each group's x-sum and y-sum
/// bounded by (1 - 7 mu) m. Hypotheses:
///   (a) (1-mu) sum x <= sum y <= (1+mu) sum x
///   (b) x_i + y_i <= mu m for every i
///   (c) max(sum x, sum y) < (1 - 10 mu) m s
struct AssignmentInstance {
    std::vector<DemandPair> pairs;
    double m = 0.0;
    int s = 1;
    double mu = 0.0;

    /// Names the first violated hypothesis ("a", "b" or "c"), nullopt if all hold.
    std::optional<std::string> violated_clause() const;
    double capacity() const { return (1.0 - 7.0 * mu) * m; }
};

using Groups = std::vector<std::vector<int>>;

/// Splits `pairs` into `s` groups with both per-group sums <= capacity.
/// First-fit decreasing by x+y into the least loaded group that fits, falling
/// back to a node-bounded branch and bound. Throws AssignmentFailed.
Groups assign_groups(const std::vector<DemandPair>& pairs, int s, double capacity,
                     std::int64_t node_budget = 1'000'000);

/// Validates the instance hypotheses, then assign_groups with capacity (1-7mu)m.
/// The returned partition is checked before returning.
Groups partition_pieces(const AssignmentInstance& instance, std::int64_t node_budget = 1'000'000);

/// Throws AssignmentFailed unless `groups` partitions the pairs within capacity.
void check_groups(const std::vector<DemandPair>& pairs, const Groups& groups, int s, double capacity);

}  // namespace treepack
