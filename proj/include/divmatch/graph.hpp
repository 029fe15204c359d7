#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace divmatch {

using Vertex = std::int32_t;
using Edge = std::pair<Vertex, Vertex>;

inline constexpr Vertex kUnassigned = -1;

/// Raised when an input violates a documented precondition (bad sizes,
/// out-of-range parameters, invalid matchings handed to a solver).
class UsageError : public std::invalid_argument {
   public:
    using std::invalid_argument::invalid_argument;
};

/// Raised when an operation requires a perfect matching and none exists.
class InfeasibleError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

/// Raised when an enumeration limit or a sampler step budget is exhausted.
class LimitExceeded : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

/**
 * Unweighted bipartite graph on (n, n) vertices.
 *
 * Vertices are 0-based on both sides. Edges are kept sorted
 * lexicographically by (u, v); an edge's position in that order is its id,
 * which is what EdgeWeighting indexes.
 */
class BipartiteGraph {
   public:
    BipartiteGraph() = default;

    BipartiteGraph(Vertex n, std::vector<Edge> edges) : n_(n), edges_(std::move(edges)) {
        if (n_ < 0) throw UsageError("vertex count must be non-negative");
        std::sort(edges_.begin(), edges_.end());
        for (std::size_t i = 0; i < edges_.size(); ++i) {
            auto [u, v] = edges_[i];
            if (u < 0 || u >= n_ || v < 0 || v >= n_) {
                throw UsageError("edge (" + std::to_string(u + 1) + ", " + std::to_string(v + 1) +
                                 ") is out of range for n = " + std::to_string(n_));
            }
            if (i > 0 && edges_[i - 1] == edges_[i]) {
                throw UsageError("duplicate edge (" + std::to_string(u + 1) + ", " + std::to_string(v + 1) + ")");
            }
        }
        adj_u_.assign(static_cast<std::size_t>(n_), {});
        adj_v_.assign(static_cast<std::size_t>(n_), {});
        for (auto [u, v] : edges_) {
            adj_u_[u].push_back(v);
            adj_v_[v].push_back(u);
        }
        for (auto& a : adj_v_) std::sort(a.begin(), a.end());
    }

    Vertex n() const { return n_; }
    std::size_t edge_count() const { return edges_.size(); }
    const std::vector<Edge>& edges() const { return edges_; }

    /// V-neighbours of u, ascending.
    const std::vector<Vertex>& neighbors_of_u(Vertex u) const { return adj_u_[u]; }
    /// U-neighbours of v, ascending.
    const std::vector<Vertex>& neighbors_of_v(Vertex v) const { return adj_v_[v]; }

    bool has_edge(Vertex u, Vertex v) const {
        if (u < 0 || u >= n_ || v < 0 || v >= n_) return false;
        const auto& a = adj_u_[u];
        return std::binary_search(a.begin(), a.end(), v);
    }

    /// Position of (u, v) in edges(), or -1 if absent.
    std::ptrdiff_t edge_id(Vertex u, Vertex v) const {
        auto it = std::lower_bound(edges_.begin(), edges_.end(), Edge{u, v});
        if (it == edges_.end() || *it != Edge{u, v}) return -1;
        return it - edges_.begin();
    }

    friend bool operator==(const BipartiteGraph& a, const BipartiteGraph& b) {
        return a.n_ == b.n_ && a.edges_ == b.edges_;
    }

   private:
    Vertex n_ = 0;
    std::vector<Edge> edges_;
    std::vector<std::vector<Vertex>> adj_u_;
    std::vector<std::vector<Vertex>> adj_v_;
};

/**
 * A (candidate) perfect matching stored as the assignment u -> assign[u].
 *
 * The type itself does not know its graph, so it can carry invalid data
 * (collisions, non-edges, kUnassigned slots); validate_matching() reports
 * those. Every solver in this library only ever returns valid matchings.
 */
struct Matching {
    std::vector<Vertex> assign;

    Matching() = default;
    explicit Matching(std::vector<Vertex> a) : assign(std::move(a)) {}

    Vertex n() const { return static_cast<Vertex>(assign.size()); }
    Vertex operator[](Vertex u) const { return assign[u]; }

    bool contains(Vertex u, Vertex v) const { return u >= 0 && u < n() && assign[u] == v; }

    std::vector<Edge> pairs() const {
        std::vector<Edge> out;
        out.reserve(assign.size());
        for (Vertex u = 0; u < n(); ++u) out.emplace_back(u, assign[u]);
        return out;
    }

    auto operator<=>(const Matching&) const = default;
    bool operator==(const Matching&) const = default;
};

/// Non-negative integer weight per edge id of a specific graph.
class EdgeWeighting {
   public:
    EdgeWeighting() = default;

    EdgeWeighting(const BipartiteGraph& g, std::vector<std::int64_t> w) : w_(std::move(w)) {
        if (w_.size() != g.edge_count()) throw UsageError("weighting size does not match the edge count");
        for (auto x : w_) {
            if (x < 0) throw UsageError("edge weights must be non-negative");
        }
    }

    static EdgeWeighting zeros(const BipartiteGraph& g) { return EdgeWeighting(g, std::vector<std::int64_t>(g.edge_count(), 0)); }

    std::int64_t operator[](std::size_t edge) const { return w_[edge]; }
    std::size_t size() const { return w_.size(); }
    const std::vector<std::int64_t>& values() const { return w_; }
    std::int64_t max() const { return w_.empty() ? 0 : *std::max_element(w_.begin(), w_.end()); }

   private:
    std::vector<std::int64_t> w_;
};

/// Number of U-vertices assigned differently by a and b.
inline Vertex distance(const Matching& a, const Matching& b) {
    if (a.n() != b.n()) {
        throw UsageError("distance between matchings of different sizes (" + std::to_string(a.n()) + " vs " +
                         std::to_string(b.n()) + ")");
    }
    Vertex d = 0;
    for (Vertex u = 0; u < a.n(); ++u) d += a.assign[u] != b.assign[u];
    return d;
}

struct Violation {
    enum class Kind { SizeMismatch, NotAnEdge, Collision, UncoveredU, UncoveredV };
    Kind kind;
    Vertex u = kUnassigned;
    Vertex v = kUnassigned;
    std::string message;
};

struct MatchingDiagnostics {
    std::vector<Violation> violations;
    bool valid() const { return violations.empty(); }
};

/// Lists every way m fails to be a perfect matching of g.
inline MatchingDiagnostics validate_matching(const BipartiteGraph& g, const Matching& m) {
    MatchingDiagnostics diag;
    auto add = [&](Violation::Kind k, Vertex u, Vertex v, std::string msg) {
        diag.violations.push_back({k, u, v, std::move(msg)});
    };
    if (m.n() != g.n()) {
        add(Violation::Kind::SizeMismatch, kUnassigned, kUnassigned,
            "matching has " + std::to_string(m.n()) + " slots but graph has n = " + std::to_string(g.n()));
        return diag;
    }
    const Vertex n = g.n();
    std::vector<int> used(static_cast<std::size_t>(n), 0);
    for (Vertex u = 0; u < n; ++u) {
        Vertex v = m.assign[u];
        if (v == kUnassigned) {
            add(Violation::Kind::UncoveredU, u, kUnassigned, "u" + std::to_string(u + 1) + " is not matched");
            continue;
        }
        if (v < 0 || v >= n) {
            add(Violation::Kind::NotAnEdge, u, v,
                "(" + std::to_string(u + 1) + "," + std::to_string(v + 1) + ") is out of range");
            continue;
        }
        if (!g.has_edge(u, v)) {
            add(Violation::Kind::NotAnEdge, u, v,
                "(" + std::to_string(u + 1) + "," + std::to_string(v + 1) + ") is not an edge");
        }
        if (++used[v] == 2) {
            add(Violation::Kind::Collision, u, v, "v" + std::to_string(v + 1) + " is used more than once");
        }
    }
    for (Vertex v = 0; v < n; ++v) {
        if (used[v] == 0) add(Violation::Kind::UncoveredV, kUnassigned, v, "v" + std::to_string(v + 1) + " is not matched");
    }
    return diag;
}

inline bool is_perfect_matching(const BipartiteGraph& g, const Matching& m) { return validate_matching(g, m).valid(); }

inline void require_valid(const BipartiteGraph& g, const Matching& m, const char* what) {
    auto diag = validate_matching(g, m);
    if (!diag.valid()) throw UsageError(std::string(what) + ": " + diag.violations.front().message);
}

}  // namespace divmatch
