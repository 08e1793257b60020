#include "treepack/assignment.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

namespace treepack {

namespace {

constexpr double kSlack = 1e-9;

struct Load {
    std::int64_t x = 0;
    std::int64_t y = 0;
    std::int64_t peak() const { return std::max(x, y); }
};

bool fits(const Load& load, const DemandPair& p, double capacity) {
    return static_cast<double>(load.x + p.x) <= capacity + kSlack && static_cast<double>(load.y + p.y) <= capacity + kSlack;
}

std::vector<int> decreasing_order(const std::vector<DemandPair>& pairs) {
    std::vector<int> order(pairs.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
        return pairs[a].x + pairs[a].y > pairs[b].x + pairs[b].y;
    });
    return order;
}

std::optional<Groups> first_fit_decreasing(const std::vector<DemandPair>& pairs, int s, double capacity) {
    Groups groups(s);
    std::vector<Load> loads(s);
    for (int idx : decreasing_order(pairs)) {
        int chosen = -1;
        for (int g = 0; g < s; ++g) {
            if (!fits(loads[g], pairs[idx], capacity)) continue;
            if (chosen < 0 || loads[g].peak() < loads[chosen].peak()) chosen = g;
        }
        if (chosen < 0) return std::nullopt;
        groups[chosen].push_back(idx);
        loads[chosen].x += pairs[idx].x;
        loads[chosen].y += pairs[idx].y;
    }
    return groups;
}

class BranchAndBound {
public:
    BranchAndBound(const std::vector<DemandPair>& pairs, int s, double capacity, std::int64_t budget)
        : pairs_(pairs), order_(decreasing_order(pairs)), capacity_(capacity), budget_(budget), loads_(s), groups_(s) {
        suffix_x_.assign(order_.size() + 1, 0);
        suffix_y_.assign(order_.size() + 1, 0);
        for (std::size_t k = order_.size(); k-- > 0;) {
            suffix_x_[k] = suffix_x_[k + 1] + pairs_[order_[k]].x;
            suffix_y_[k] = suffix_y_[k + 1] + pairs_[order_[k]].y;
        }
    }

    std::optional<Groups> run() {
        if (search(0)) return groups_;
        return std::nullopt;
    }

private:
    bool search(std::size_t k) {
        if (++nodes_ > budget_) return false;
        if (k == order_.size()) return true;
        // Remaining demand must fit into the remaining room.
        double room_x = 0, room_y = 0;
        for (const Load& l : loads_) {
            room_x += std::max(0.0, capacity_ - static_cast<double>(l.x));
            room_y += std::max(0.0, capacity_ - static_cast<double>(l.y));
        }
        if (static_cast<double>(suffix_x_[k]) > room_x + kSlack || static_cast<double>(suffix_y_[k]) > room_y + kSlack) {
            return false;
        }
        const int idx = order_[k];
        std::set<std::pair<std::int64_t, std::int64_t>> tried;  // groups with equal loads are interchangeable
        for (std::size_t g = 0; g < loads_.size(); ++g) {
            if (!fits(loads_[g], pairs_[idx], capacity_)) continue;
            if (!tried.insert({loads_[g].x, loads_[g].y}).second) continue;
            loads_[g].x += pairs_[idx].x;
            loads_[g].y += pairs_[idx].y;
            groups_[g].push_back(idx);
            if (search(k + 1)) return true;
            groups_[g].pop_back();
            loads_[g].x -= pairs_[idx].x;
            loads_[g].y -= pairs_[idx].y;
            if (nodes_ > budget_) return false;
        }
        return false;
    }

    const std::vector<DemandPair>& pairs_;
    std::vector<int> order_;
    double capacity_;
    std::int64_t budget_;
    std::int64_t nodes_ = 0;
    std::vector<Load> loads_;
    Groups groups_;
    std::vector<std::int64_t> suffix_x_;
    std::vector<std::int64_t> suffix_y_;
};

}  // namespace

std::optional<std::string> AssignmentInstance::violated_clause() const {
    std::int64_t sx = 0, sy = 0;
    for (const auto& p : pairs) {
        if (p.x < 0 || p.y < 0) return "non-negative";
        sx += p.x;
        sy += p.y;
    }
    const double dx = static_cast<double>(sx), dy = static_cast<double>(sy);
    if (dy < (1.0 - mu) * dx - kSlack || dy > (1.0 + mu) * dx + kSlack) return "a";
    for (const auto& p : pairs)
        if (static_cast<double>(p.x + p.y) > mu * m + kSlack) return "b";
    if (!(std::max(dx, dy) < (1.0 - 10.0 * mu) * m * s)) return "c";
    return std::nullopt;
}

void check_groups(const std::vector<DemandPair>& pairs, const Groups& groups, int s, double capacity) {
    auto fail = [](const std::string& what) {
        throw AssignmentError(AssignmentError::Kind::AssignmentFailed, "assignment postcondition: " + what);
    };
    if (static_cast<int>(groups.size()) != s) fail("wrong group count");
    std::vector<int> seen(pairs.size(), 0);
    for (const auto& group : groups) {
        Load load;
        for (int idx : group) {
            if (idx < 0 || idx >= static_cast<int>(pairs.size())) fail("index out of range");
            ++seen[idx];
            load.x += pairs[idx].x;
            load.y += pairs[idx].y;
        }
        if (static_cast<double>(load.x) > capacity + kSlack || static_cast<double>(load.y) > capacity + kSlack) {
            fail("group over capacity");
        }
    }
    for (int c : seen)
        if (c != 1) fail("not a partition");
}

Groups assign_groups(const std::vector<DemandPair>& pairs, int s, double capacity, std::int64_t node_budget) {
    if (s < 1) throw AssignmentError(AssignmentError::Kind::PreconditionViolated, "group count must be positive");
    std::optional<Groups> groups = first_fit_decreasing(pairs, s, capacity);
    if (!groups) groups = BranchAndBound(pairs, s, capacity, node_budget).run();
    if (!groups) {
        throw AssignmentError(AssignmentError::Kind::AssignmentFailed,
                              "no assignment of " + std::to_string(pairs.size()) + " pieces into " +
                                  std::to_string(s) + " groups within capacity " + std::to_string(capacity));
    }
    for (auto& g : *groups) std::sort(g.begin(), g.end());
    check_groups(pairs, *groups, s, capacity);
    return *groups;
}

Groups partition_pieces(const AssignmentInstance& instance, std::int64_t node_budget) {
    if (auto clause = instance.violated_clause()) {
        throw AssignmentError(AssignmentError::Kind::PreconditionViolated, "hypothesis (" + *clause + ") violated");
    }
    return assign_groups(instance.pairs, instance.s, instance.capacity(), node_budget);
}

}  // namespace treepack
