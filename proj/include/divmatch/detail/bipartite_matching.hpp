#pragma once

#include <cstddef>
#include <limits>
#include <queue>
#include <vector>

#include "../graph.hpp"

namespace divmatch::detail {

using Adjacency = std::vector<std::vector<Vertex>>;

struct MaxMatching {
    std::vector<Vertex> mate_u;
    std::vector<Vertex> mate_v;
    Vertex size = 0;
};

/// Hopcroft-Karp maximum cardinality matching on an (n, n) bipartite graph
/// given by U-side adjacency lists.
inline MaxMatching hopcroft_karp(Vertex n, const Adjacency& adj) {
    constexpr int kInf = std::numeric_limits<int>::max();
    MaxMatching r;
    r.mate_u.assign(n, kUnassigned);
    r.mate_v.assign(n, kUnassigned);
    std::vector<int> dist(n);
    std::vector<std::size_t> it(n);

    auto bfs = [&] {
        std::queue<Vertex> q;
        bool reachable_free = false;
        for (Vertex u = 0; u < n; ++u) {
            if (r.mate_u[u] == kUnassigned) {
                dist[u] = 0;
                q.push(u);
            } else {
                dist[u] = kInf;
            }
        }
        while (!q.empty()) {
            Vertex u = q.front();
            q.pop();
            for (Vertex v : adj[u]) {
                Vertex w = r.mate_v[v];
                if (w == kUnassigned) {
                    reachable_free = true;
                } else if (dist[w] == kInf) {
                    dist[w] = dist[u] + 1;
                    q.push(w);
                }
            }
        }
        return reachable_free;
    };

    // Iterative DFS along the BFS layering.
    auto dfs = [&](Vertex root) {
        std::vector<Vertex> stack{root};
        std::vector<Vertex> via;  // via[i]: V-vertex used to leave stack[i]
        while (!stack.empty()) {
            Vertex u = stack.back();
            bool advanced = false;
            for (; it[u] < adj[u].size(); ++it[u]) {
                Vertex v = adj[u][it[u]];
                Vertex w = r.mate_v[v];
                if (w == kUnassigned) {
                    via.push_back(v);
                    for (std::size_t i = stack.size(); i-- > 0;) {
                        r.mate_u[stack[i]] = via[i];
                        r.mate_v[via[i]] = stack[i];
                    }
                    return true;
                }
                if (dist[w] == dist[u] + 1) {
                    via.push_back(v);
                    stack.push_back(w);
                    ++it[u];
                    advanced = true;
                    break;
                }
            }
            if (!advanced) {
                dist[u] = kInf;
                stack.pop_back();
                if (!via.empty()) via.pop_back();
            }
        }
        return false;
    };

    while (bfs()) {
        std::fill(it.begin(), it.end(), 0);
        for (Vertex u = 0; u < n; ++u) {
            if (r.mate_u[u] == kUnassigned && dfs(u)) ++r.size;
        }
    }
    return r;
}

/**
 * Turns a perfect matching of `adj` into the lexicographically smallest
 * perfect matching of `adj` (smallest assign array).
 *
 * U-vertices are fixed in index order. For each u, candidates v are tried
 * ascending; a candidate is accepted when the current matching can be
 * re-routed along an alternating path that avoids every fixed vertex.
 */
inline std::vector<Vertex> lexicographically_smallest(Vertex n, const Adjacency& adj, std::vector<Vertex> mate_u) {
    std::vector<Vertex> mate_v(n, kUnassigned);
    for (Vertex u = 0; u < n; ++u) mate_v[mate_u[u]] = u;

    std::vector<Vertex> parent(n);     // parent[y]: U-vertex that reached V-vertex y
    std::vector<char> seen_v(n);
    std::vector<Vertex> queue;
    queue.reserve(n);

    for (Vertex u = 0; u < n; ++u) {
        const Vertex v0 = mate_u[u];
        for (Vertex v : adj[u]) {
            if (v == v0) break;
            const Vertex u2 = mate_v[v];
            if (u2 < u) continue;  // owned by a fixed vertex

            // Alternating BFS from u2 looking for v0, with u and v removed.
            std::fill(seen_v.begin(), seen_v.end(), 0);
            seen_v[v] = 1;
            queue.assign(1, u2);
            Vertex end_u = kUnassigned;
            for (std::size_t qi = 0; qi < queue.size() && end_u == kUnassigned; ++qi) {
                Vertex x = queue[qi];
                for (Vertex y : adj[x]) {
                    if (seen_v[y]) continue;
                    if (y == v0) {
                        end_u = x;
                        break;
                    }
                    if (mate_v[y] < u) continue;
                    seen_v[y] = 1;
                    parent[y] = x;
                    queue.push_back(mate_v[y]);
                }
            }
            if (end_u == kUnassigned) continue;

            Vertex x = end_u, y = v0;
            while (true) {
                Vertex prev = mate_u[x];
                mate_u[x] = y;
                mate_v[y] = x;
                if (x == u2) break;
                y = prev;
                x = parent[prev];
            }
            mate_u[u] = v;
            mate_v[v] = u;
            break;
        }
    }
    return mate_u;
}

}  // namespace divmatch::detail
