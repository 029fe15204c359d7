#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "detail/bipartite_matching.hpp"
#include "graph.hpp"
#include "pool.hpp"
#include "solvers.hpp"

namespace divmatch {

struct EnumerationResult {
    std::vector<Matching> matchings;  // lexicographic order
    bool complete = false;
    std::optional<std::size_t> count;  // set iff complete
};

namespace detail {

// Visits perfect matchings in lexicographic order until `visit` returns false.
// Subtrees whose residual graph has no perfect matching are skipped, so every
// explored node leads to at least one matching.
template <class Visit>
class MatchingEnumerator {
   public:
    MatchingEnumerator(const BipartiteGraph& g, Visit visit)
        : g_(g), visit_(visit), assign_(g.n(), kUnassigned), used_(g.n(), 0) {}

    void run() {
        if (residual_feasible(0)) descend(0);
    }

   private:
    bool residual_feasible(Vertex from) {
        const Vertex n = g_.n();
        const Vertex k = n - from;
        if (k == 0) return true;
        // Compact relabelling of the free V-vertices.
        std::vector<Vertex> label(n, kUnassigned);
        Vertex next = 0;
        for (Vertex v = 0; v < n; ++v) {
            if (!used_[v]) label[v] = next++;
        }
        Adjacency adj(k);
        for (Vertex u = from; u < n; ++u) {
            for (Vertex v : g_.neighbors_of_u(u)) {
                if (!used_[v]) adj[u - from].push_back(label[v]);
            }
            if (adj[u - from].empty()) return false;
        }
        return hopcroft_karp(k, adj).size == k;
    }

    bool descend(Vertex u) {
        if (u == g_.n()) return visit_(Matching(assign_));
        for (Vertex v : g_.neighbors_of_u(u)) {
            if (used_[v]) continue;
            used_[v] = 1;
            assign_[u] = v;
            bool go_on = true;
            if (residual_feasible(u + 1)) go_on = descend(u + 1);
            used_[v] = 0;
            assign_[u] = kUnassigned;
            if (!go_on) return false;
        }
        return true;
    }

    const BipartiteGraph& g_;
    Visit visit_;
    std::vector<Vertex> assign_;
    std::vector<char> used_;
};

}  // namespace detail

/// All perfect matchings if there are at most `limit`, otherwise the first
/// `limit` of them and complete = false.
inline EnumerationResult enumerate_matchings(const BipartiteGraph& g, std::size_t limit) {
    EnumerationResult r;
    r.complete = true;
    detail::MatchingEnumerator e(g, [&](Matching m) {
        if (r.matchings.size() == limit) {
            r.complete = false;
            return false;
        }
        r.matchings.push_back(std::move(m));
        return true;
    });
    e.run();
    if (r.complete) r.count = r.matchings.size();
    return r;
}

/// Number of perfect matchings, or nullopt if it exceeds `limit`.
inline std::optional<std::size_t> count_matchings(const BipartiteGraph& g, std::size_t limit) {
    std::size_t count = 0;
    bool over = false;
    detail::MatchingEnumerator e(g, [&](const Matching&) {
        if (count == limit) {
            over = true;
            return false;
        }
        ++count;
        return true;
    });
    e.run();
    if (over) return std::nullopt;
    return count;
}

/// Hyperparameters of the perfect / near-perfect matching chain.
struct ChainConfig {
    std::uint64_t seed = 0;
    std::uint64_t burn_in_steps = 10'000;
    std::uint64_t thinning_interval = 50;
    std::uint64_t sample_count = 1;
    // Re-checks the state-space invariant after every transition.
    bool verify_states = false;

    /// burn-in max(10^4, n^4), thinning max(50, n^2).
    static ChainConfig defaults(Vertex n, std::uint64_t seed, std::uint64_t samples) {
        const auto nn = static_cast<std::uint64_t>(n) * static_cast<std::uint64_t>(n);
        return {seed, std::max<std::uint64_t>(10'000, nn * nn), std::max<std::uint64_t>(50, nn), samples, false};
    }

    void check() const {
        if (burn_in_steps == 0 || thinning_interval == 0 || sample_count == 0) {
            throw UsageError("burn-in, thinning and sample count must be positive");
        }
    }
};

using Rng = std::mt19937_64;

/**
 * Random walk over perfect and near-perfect matchings. Each step draws an
 * edge e = (u, v) uniformly:
 *   - perfect state, e in M: remove e;
 *   - near-perfect, u and v both exposed: add e;
 *   - near-perfect, exactly one of u, v exposed: add e, drop the edge it
 *     conflicts with;
 *   - anything else: hold.
 * Every transition has a reverse of equal probability, so the stationary
 * distribution is uniform over the reachable states and in particular over
 * perfect matchings.
 */
class MatchingChain {
   public:
    MatchingChain(const BipartiteGraph& g, const Matching& start, std::uint64_t seed)
        : g_(g), mate_u_(start.assign), mate_v_(g.n(), kUnassigned), rng_(seed), pick_(0, g.edge_count() ? g.edge_count() - 1 : 0) {
        for (Vertex u = 0; u < g.n(); ++u) mate_v_[mate_u_[u]] = u;
    }

    bool perfect() const { return free_u_ == kUnassigned; }

    void step() {
        auto [u, v] = g_.edges()[pick_(rng_)];
        if (perfect()) {
            if (mate_u_[u] == v) {
                mate_u_[u] = kUnassigned;
                mate_v_[v] = kUnassigned;
                free_u_ = u;
                free_v_ = v;
            }
            return;
        }
        const bool u_free = u == free_u_, v_free = v == free_v_;
        if (u_free && v_free) {
            mate_u_[u] = v;
            mate_v_[v] = u;
            free_u_ = free_v_ = kUnassigned;
        } else if (u_free) {
            Vertex other = mate_v_[v];
            mate_u_[other] = kUnassigned;
            mate_u_[u] = v;
            mate_v_[v] = u;
            free_u_ = other;
        } else if (v_free) {
            Vertex other = mate_u_[u];
            mate_v_[other] = kUnassigned;
            mate_u_[u] = v;
            mate_v_[v] = u;
            free_v_ = other;
        }
    }

    Matching state() const { return Matching(mate_u_); }

    /// True iff the state is a perfect matching or a near-perfect one with
    /// exactly the recorded exposed pair, using only graph edges.
    bool state_consistent() const {
        const Vertex n = g_.n();
        Vertex exposed_u = 0, exposed_v = 0;
        for (Vertex u = 0; u < n; ++u) {
            Vertex v = mate_u_[u];
            if (v == kUnassigned) {
                ++exposed_u;
                if (u != free_u_) return false;
            } else if (!g_.has_edge(u, v) || mate_v_[v] != u) {
                return false;
            }
        }
        for (Vertex v = 0; v < n; ++v) {
            if (mate_v_[v] == kUnassigned) {
                ++exposed_v;
                if (v != free_v_) return false;
            }
        }
        return exposed_u == exposed_v && exposed_u <= 1 && (exposed_u == 1) == !perfect();
    }

   private:
    const BipartiteGraph& g_;
    std::vector<Vertex> mate_u_;
    std::vector<Vertex> mate_v_;
    Vertex free_u_ = kUnassigned;
    Vertex free_v_ = kUnassigned;
    Rng rng_;
    std::uniform_int_distribution<std::size_t> pick_;
};

/**
 * Near-uniform perfect matchings from the chain above. After burn-in the
 * state is inspected every thinning_interval steps and kept when perfect.
 * Throws LimitExceeded if 1000 * sample_count * thinning_interval post-burn-in
 * steps do not produce enough samples.
 */
inline std::vector<Matching> mcmc_sample(const BipartiteGraph& g, const ChainConfig& cfg) {
    cfg.check();
    auto start = find_perfect_matching(g);
    if (!start.feasible()) throw InfeasibleError("graph has no perfect matching");
    std::vector<Matching> out;
    out.reserve(cfg.sample_count);
    if (g.n() == 0) {
        out.assign(cfg.sample_count, Matching{});
        return out;
    }
    MatchingChain chain(g, *start.matching, cfg.seed);
    auto advance = [&] {
        chain.step();
        if (cfg.verify_states && !chain.state_consistent()) throw std::logic_error("matching chain left its state space");
    };
    for (std::uint64_t s = 0; s < cfg.burn_in_steps; ++s) advance();
    const std::uint64_t budget = 1000 * cfg.sample_count * cfg.thinning_interval;
    std::uint64_t steps = 0;
    while (out.size() < cfg.sample_count) {
        for (std::uint64_t s = 0; s < cfg.thinning_interval; ++s) advance();
        steps += cfg.thinning_interval;
        if (chain.perfect()) out.push_back(chain.state());
        if (out.size() < cfg.sample_count && steps >= budget) {
            throw LimitExceeded("sampler collected " + std::to_string(out.size()) + " of " +
                                std::to_string(cfg.sample_count) + " samples within " + std::to_string(budget) +
                                " steps");
        }
    }
    return out;
}

/**
 * First perfect state accepted by `accept` after a default-length burn-in,
 * looking at every step rather than at thinned checkpoints. Meant for
 * heuristic starting points, not for unbiased sampling. Returns nullopt when
 * max(10^6, 10 * burn-in) post-burn-in steps pass without a hit.
 */
template <class Accept>
std::optional<Matching> draw_matching(const BipartiteGraph& g, std::uint64_t seed, Accept accept) {
    auto start = find_perfect_matching(g);
    if (!start.feasible()) throw InfeasibleError("graph has no perfect matching");
    if (g.n() == 0) return accept(*start.matching) ? start.matching : std::nullopt;
    const auto cfg = ChainConfig::defaults(g.n(), seed, 1);
    MatchingChain chain(g, *start.matching, seed);
    for (std::uint64_t s = 0; s < cfg.burn_in_steps; ++s) chain.step();
    const std::uint64_t budget = std::max<std::uint64_t>(1'000'000, 10 * cfg.burn_in_steps);
    for (std::uint64_t s = 0; s < budget; ++s) {
        chain.step();
        if (chain.perfect()) {
            Matching m = chain.state();
            if (accept(m)) return m;
        }
    }
    return std::nullopt;
}

/// Uniformly chosen pool member, reproducible from the seed.
inline const Matching& select_secret(const MatchingPool& pool, std::uint64_t seed) {
    if (pool.empty()) throw UsageError("cannot select from an empty pool");
    Rng rng(seed);
    std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
    return pool[pick(rng)];
}

}  // namespace divmatch
