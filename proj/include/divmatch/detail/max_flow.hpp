#pragma once

#include <cstdint>
#include <limits>
#include <queue>
#include <vector>

namespace divmatch::detail {

/// Dinic's algorithm with integer capacities. Arcs keep insertion order, so
/// results are deterministic for a fixed construction sequence.
class MaxFlow {
   public:
    explicit MaxFlow(int nodes) : head_(nodes), level_(nodes), it_(nodes) {}

    /// Returns the arc id; flow(id) reads the flow on it afterwards.
    int add_arc(int from, int to, std::int64_t cap) {
        int id = static_cast<int>(arcs_.size());
        arcs_.push_back({to, cap});
        head_[from].push_back(id);
        arcs_.push_back({from, 0});
        head_[to].push_back(id + 1);
        original_.push_back(cap);
        original_.push_back(0);
        return id;
    }

    std::int64_t run(int source, int sink) {
        std::int64_t total = 0;
        while (bfs(source, sink)) {
            std::fill(it_.begin(), it_.end(), 0);
            while (std::int64_t f = dfs(source, sink, std::numeric_limits<std::int64_t>::max())) total += f;
        }
        return total;
    }

    std::int64_t flow(int arc) const { return original_[arc] - arcs_[arc].cap; }

   private:
    struct Arc {
        int to;
        std::int64_t cap;
    };

    bool bfs(int s, int t) {
        std::fill(level_.begin(), level_.end(), -1);
        std::queue<int> q;
        level_[s] = 0;
        q.push(s);
        while (!q.empty()) {
            int x = q.front();
            q.pop();
            for (int id : head_[x]) {
                const Arc& a = arcs_[id];
                if (a.cap > 0 && level_[a.to] < 0) {
                    level_[a.to] = level_[x] + 1;
                    q.push(a.to);
                }
            }
        }
        return level_[t] >= 0;
    }

    // Depth is bounded by the level graph, which is shallow for our
    // four-layer networks.
    std::int64_t dfs(int x, int t, std::int64_t pushed) {
        if (x == t) return pushed;
        for (auto& i = it_[x]; i < head_[x].size(); ++i) {
            int id = head_[x][i];
            Arc& a = arcs_[id];
            if (a.cap <= 0 || level_[a.to] != level_[x] + 1) continue;
            if (std::int64_t f = dfs(a.to, t, std::min(pushed, a.cap))) {
                a.cap -= f;
                arcs_[id ^ 1].cap += f;
                return f;
            }
        }
        return 0;
    }

    std::vector<Arc> arcs_;
    std::vector<std::int64_t> original_;
    std::vector<std::vector<int>> head_;
    std::vector<int> level_;
    std::vector<std::size_t> it_;
};

}  // namespace divmatch::detail
