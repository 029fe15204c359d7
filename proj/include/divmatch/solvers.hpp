#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "detail/bipartite_matching.hpp"
#include "detail/hungarian.hpp"
#include "detail/max_flow.hpp"
#include "graph.hpp"

namespace divmatch {

enum class SolveStatus { Feasible, Infeasible };

struct SolveOutcome {
    SolveStatus status = SolveStatus::Infeasible;
    std::optional<Matching> matching;

    bool feasible() const { return status == SolveStatus::Feasible; }

    static SolveOutcome infeasible() { return {}; }
    static SolveOutcome of(Matching m) { return {SolveStatus::Feasible, std::move(m)}; }
};

struct WeightedOutcome : SolveOutcome {
    std::int64_t weight = 0;
};

namespace detail {

template <class Keep>
Adjacency adjacency_where(const BipartiteGraph& g, Keep keep) {
    Adjacency adj(static_cast<std::size_t>(g.n()));
    for (std::size_t id = 0; id < g.edge_count(); ++id) {
        auto [u, v] = g.edges()[id];
        if (keep(id, u, v)) adj[u].push_back(v);
    }
    return adj;
}

inline Adjacency adjacency(const BipartiteGraph& g) {
    return adjacency_where(g, [](std::size_t, Vertex, Vertex) { return true; });
}

/// Lexicographically smallest perfect matching of `adj`, if any.
inline std::optional<Matching> smallest_perfect_matching(Vertex n, const Adjacency& adj) {
    auto mm = hopcroft_karp(n, adj);
    if (mm.size != n) return std::nullopt;
    return Matching(lexicographically_smallest(n, adj, std::move(mm.mate_u)));
}

}  // namespace detail

/// Lexicographically smallest perfect matching of g, or infeasible.
inline SolveOutcome find_perfect_matching(const BipartiteGraph& g) {
    auto m = detail::smallest_perfect_matching(g.n(), detail::adjacency(g));
    return m ? SolveOutcome::of(std::move(*m)) : SolveOutcome::infeasible();
}

/**
 * Minimum total weight perfect matching, ties broken toward the
 * lexicographically smallest assignment.
 *
 * The Hungarian method yields optimal integer duals; the optimal perfect
 * matchings are then exactly the perfect matchings of the tight-edge
 * subgraph, and the smallest of those is picked.
 */
inline WeightedOutcome min_weight_perfect_matching(const BipartiteGraph& g, const EdgeWeighting& w) {
    if (w.size() != g.edge_count()) throw UsageError("weighting size does not match the edge count");
    const Vertex n = g.n();
    WeightedOutcome out;
    if (detail::hopcroft_karp(n, detail::adjacency(g)).size != n) return out;

    // Any non-edge costs more than every all-edge perfect matching.
    const std::int64_t forbidden = (w.max() + 1) * std::max<std::int64_t>(n, 1) + 1;
    std::vector<std::int64_t> cost(static_cast<std::size_t>(n) * n, forbidden);
    for (std::size_t id = 0; id < g.edge_count(); ++id) {
        auto [u, v] = g.edges()[id];
        cost[static_cast<std::size_t>(u) * n + v] = w[id];
    }
    auto hr = detail::hungarian(n, cost);
    auto tight = detail::adjacency_where(g, [&](std::size_t id, Vertex u, Vertex v) {
        return w[id] - hr.row[u] - hr.col[v] == 0;
    });
    Matching m(detail::lexicographically_smallest(n, tight, hr.mate_u));
    out.status = SolveStatus::Feasible;
    out.weight = 0;
    for (Vertex u = 0; u < n; ++u) out.weight += w[static_cast<std::size_t>(g.edge_id(u, m[u]))];
    out.matching = std::move(m);
    return out;
}

/// Maximum total weight via complementing weights against their maximum.
inline WeightedOutcome max_weight_perfect_matching(const BipartiteGraph& g, const EdgeWeighting& w) {
    const std::int64_t top = w.max();
    std::vector<std::int64_t> flipped(w.size());
    for (std::size_t i = 0; i < w.size(); ++i) flipped[i] = top - w[i];
    auto out = min_weight_perfect_matching(g, EdgeWeighting(g, std::move(flipped)));
    if (out.feasible()) out.weight = top * g.n() - out.weight;
    return out;
}

/// Weight 1 on the edges of m, 0 elsewhere.
inline EdgeWeighting indicator_weighting(const BipartiteGraph& g, const Matching& m) {
    std::vector<std::int64_t> w(g.edge_count(), 0);
    for (Vertex u = 0; u < m.n(); ++u) {
        auto id = g.edge_id(u, m[u]);
        if (id >= 0) w[static_cast<std::size_t>(id)] = 1;
    }
    return EdgeWeighting(g, std::move(w));
}

struct DistantResult {
    Matching matching;
    Vertex d_star = 0;
    Vertex overlap = 0;  // |M1 ∩ M2| = n - d_star
};

/// Perfect matching farthest from `given`, with its distance.
inline DistantResult most_distant_matching(const BipartiteGraph& g, const Matching& given) {
    require_valid(g, given, "given matching");
    auto r = min_weight_perfect_matching(g, indicator_weighting(g, given));
    // given is itself perfect, so r is feasible.
    DistantResult out{std::move(*r.matching), 0, static_cast<Vertex>(r.weight)};
    out.d_star = g.n() - out.overlap;
    return out;
}

struct DecisionResult {
    bool yes = false;
    std::optional<Matching> witness;
    Vertex d_star = 0;
};

/// Is there a perfect matching at distance >= d from `given`?
inline DecisionResult distant_matching_decision(const BipartiteGraph& g, const Matching& given, Vertex d) {
    if (d < 0 || d > g.n()) {
        throw UsageError("d = " + std::to_string(d) + " is outside [0, " + std::to_string(g.n()) + "]");
    }
    auto r = most_distant_matching(g, given);
    DecisionResult out;
    out.d_star = r.d_star;
    out.yes = r.d_star >= d;
    if (out.yes) out.witness = d == 0 ? given : std::move(r.matching);
    return out;
}

/// Perfect matching sharing no edge with `given`.
inline SolveOutcome fully_disjoint_from(const BipartiteGraph& g, const Matching& given) {
    require_valid(g, given, "given matching");
    auto adj = detail::adjacency_where(g, [&](std::size_t, Vertex u, Vertex v) { return !given.contains(u, v); });
    auto m = detail::smallest_perfect_matching(g.n(), adj);
    return m ? SolveOutcome::of(std::move(*m)) : SolveOutcome::infeasible();
}

/// Spanning subgraph in which every vertex has degree exactly 2.
struct TwoFactor {
    Vertex n = 0;
    std::vector<Edge> edges;  // sorted

    /// Degree-2 check against g, including edges ⊆ E.
    bool valid_for(const BipartiteGraph& g) const {
        if (n != g.n() || edges.size() != 2 * static_cast<std::size_t>(n)) return false;
        std::vector<int> du(n, 0), dv(n, 0);
        for (std::size_t i = 0; i < edges.size(); ++i) {
            auto [u, v] = edges[i];
            if (!g.has_edge(u, v) || (i > 0 && edges[i - 1] == edges[i])) return false;
            ++du[u];
            ++dv[v];
        }
        for (Vertex x = 0; x < n; ++x) {
            if (du[x] != 2 || dv[x] != 2) return false;
        }
        return true;
    }
};

/**
 * 2-factor via max flow: source -> u (cap 2), u -> v per edge (cap 1),
 * v -> sink (cap 2). Feasible iff the flow saturates at 2n.
 */
inline std::optional<TwoFactor> two_factor(const BipartiteGraph& g) {
    const Vertex n = g.n();
    const int source = 2 * n, sink = 2 * n + 1;
    detail::MaxFlow net(2 * n + 2);
    for (Vertex u = 0; u < n; ++u) net.add_arc(source, u, 2);
    std::vector<int> arc(g.edge_count());
    for (std::size_t id = 0; id < g.edge_count(); ++id) {
        auto [u, v] = g.edges()[id];
        arc[id] = net.add_arc(u, n + v, 1);
    }
    for (Vertex v = 0; v < n; ++v) net.add_arc(n + v, sink, 2);
    if (net.run(source, sink) != 2 * static_cast<std::int64_t>(n)) return std::nullopt;
    TwoFactor tf{n, {}};
    for (std::size_t id = 0; id < g.edge_count(); ++id) {
        if (net.flow(arc[id]) == 1) tf.edges.push_back(g.edges()[id]);
    }
    return tf;
}

/**
 * Splits a 2-factor into two edge-disjoint perfect matchings by walking each
 * even cycle. A cycle starts at its lowest unvisited U-vertex, whose smaller
 * incident edge goes to the first matching; colours then alternate.
 */
inline std::pair<Matching, Matching> split_two_factor(const TwoFactor& tf) {
    const Vertex n = tf.n;
    std::vector<std::vector<Vertex>> nu(n), nv(n);
    for (auto [u, v] : tf.edges) {
        nu[u].push_back(v);
        nv[v].push_back(u);
    }
    std::vector<Vertex> a(n, kUnassigned), b(n, kUnassigned);
    std::vector<char> visited(n, 0);
    for (Vertex start = 0; start < n; ++start) {
        if (visited[start]) continue;
        Vertex u = start;
        Vertex v = std::min(nu[u][0], nu[u][1]);
        while (!visited[u]) {
            visited[u] = 1;
            a[u] = v;
            Vertex next_u = nv[v][0] == u ? nv[v][1] : nv[v][0];
            b[next_u] = v;
            v = nu[next_u][0] == v ? nu[next_u][1] : nu[next_u][0];
            u = next_u;
        }
    }
    return {Matching(std::move(a)), Matching(std::move(b))};
}

/// Two perfect matchings with no edge in common, or nullopt.
inline std::optional<std::pair<Matching, Matching>> disjoint_pair(const BipartiteGraph& g) {
    auto tf = two_factor(g);
    if (!tf) return std::nullopt;
    return split_two_factor(*tf);
}

}  // namespace divmatch
