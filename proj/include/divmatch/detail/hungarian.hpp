#pragma once

#include <cstdint>
#include <limits>
#include <vector>

#include "../graph.hpp"

namespace divmatch::detail {

struct AssignmentResult {
    std::vector<Vertex> mate_u;
    // Feasible duals: cost[u][v] - row[u] - col[v] >= 0, with equality on
    // every edge of every minimum-cost assignment.
    std::vector<std::int64_t> row;
    std::vector<std::int64_t> col;
    std::int64_t cost = 0;
};

/// O(n^3) Hungarian method with integer potentials on a dense n x n cost
/// matrix stored row-major.
inline AssignmentResult hungarian(Vertex n, const std::vector<std::int64_t>& cost) {
    constexpr std::int64_t kInf = std::numeric_limits<std::int64_t>::max() / 4;
    const std::size_t sz = static_cast<std::size_t>(n) + 1;
    // 1-based internally; index 0 is the virtual column.
    std::vector<std::int64_t> pu(sz, 0), pv(sz, 0), minv(sz);
    std::vector<Vertex> owner(sz, 0), way(sz, 0);
    std::vector<char> used(sz);
    auto c = [&](Vertex i, Vertex j) { return cost[static_cast<std::size_t>(i - 1) * n + (j - 1)]; };

    for (Vertex i = 1; i <= n; ++i) {
        owner[0] = i;
        Vertex j0 = 0;
        std::fill(minv.begin(), minv.end(), kInf);
        std::fill(used.begin(), used.end(), 0);
        do {
            used[j0] = 1;
            Vertex i0 = owner[j0], j1 = 0;
            std::int64_t delta = kInf;
            for (Vertex j = 1; j <= n; ++j) {
                if (used[j]) continue;
                std::int64_t cur = c(i0, j) - pu[i0] - pv[j];
                if (cur < minv[j]) {
                    minv[j] = cur;
                    way[j] = j0;
                }
                if (minv[j] < delta) {
                    delta = minv[j];
                    j1 = j;
                }
            }
            for (Vertex j = 0; j <= n; ++j) {
                if (used[j]) {
                    pu[owner[j]] += delta;
                    pv[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
        } while (owner[j0] != 0);
        do {
            Vertex j1 = way[j0];
            owner[j0] = owner[j1];
            j0 = j1;
        } while (j0 != 0);
    }

    AssignmentResult r;
    r.mate_u.assign(n, kUnassigned);
    r.row.assign(n, 0);
    r.col.assign(n, 0);
    for (Vertex j = 1; j <= n; ++j) r.mate_u[owner[j] - 1] = j - 1;
    for (Vertex i = 0; i < n; ++i) {
        r.row[i] = pu[i + 1];
        r.col[i] = pv[i + 1];
        r.cost += c(i + 1, r.mate_u[i] + 1);
    }
    return r;
}

}  // namespace divmatch::detail
