#pragma once

#include <algorithm>
#include <cstdint>
#include <vector>

#include "graph.hpp"

namespace divmatch {

/// Sum of pairwise distances over a list of matchings.
inline std::int64_t total_pairwise_distance(const std::vector<Matching>& ms) {
    std::int64_t total = 0;
    for (std::size_t i = 0; i < ms.size(); ++i)
        for (std::size_t j = i + 1; j < ms.size(); ++j) total += distance(ms[i], ms[j]);
    return total;
}

/**
 * Ordered set of distinct perfect matchings together with its total pairwise
 * distance. The objective is recomputed on every construction, so it cannot
 * drift from the members.
 */
class MatchingPool {
   public:
    MatchingPool() = default;

    explicit MatchingPool(std::vector<Matching> members) : members_(std::move(members)) {
        for (std::size_t i = 0; i < members_.size(); ++i) {
            if (members_[i].n() != members_.front().n()) throw UsageError("pool members have different sizes");
            for (std::size_t j = 0; j < i; ++j) {
                if (members_[i] == members_[j]) throw UsageError("pool members must be pairwise distinct");
            }
        }
        objective_ = total_pairwise_distance(members_);
    }

    const std::vector<Matching>& members() const { return members_; }
    std::size_t size() const { return members_.size(); }
    bool empty() const { return members_.empty(); }
    const Matching& operator[](std::size_t i) const { return members_[i]; }
    std::int64_t objective() const { return objective_; }

    bool contains(const Matching& m) const { return std::find(members_.begin(), members_.end(), m) != members_.end(); }

    /// Smallest distance between two members; 0 for pools of size < 2.
    Vertex min_pairwise_distance() const {
        if (members_.size() < 2) return 0;
        Vertex best = members_.front().n();
        for (std::size_t i = 0; i < members_.size(); ++i)
            for (std::size_t j = i + 1; j < members_.size(); ++j) best = std::min(best, distance(members_[i], members_[j]));
        return best;
    }

   private:
    std::vector<Matching> members_;
    std::int64_t objective_ = 0;
};

inline std::int64_t pool_objective(const MatchingPool& pool) { return total_pairwise_distance(pool.members()); }

}  // namespace divmatch
