#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <vector>

#include "graph.hpp"
#include "pool.hpp"
#include "sampling.hpp"
#include "solvers.hpp"

namespace divmatch {

/// Steps of the alternating most-distant iteration. steps[0] is the start
/// (distance 0); every later entry is one most_distant_matching call and
/// its distance to the entry before it.
struct SeparationTrace {
    struct Step {
        Matching matching;
        Vertex distance = 0;
        bool improving = false;
    };
    std::vector<Step> steps;

    std::size_t iterations() const { return steps.empty() ? 0 : steps.size() - 1; }
    std::size_t improving_steps() const {
        return static_cast<std::size_t>(std::count_if(steps.begin(), steps.end(), [](const Step& s) { return s.improving; }));
    }
};

struct SeparatedPair {
    Matching first;
    Matching second;
    Vertex d = 0;
    SeparationTrace trace;
};

/**
 * Pair of perfect matchings that are each other's most distant matching.
 *
 * Starting from `start` (default: find_perfect_matching), repeatedly replaces
 * the older endpoint with the most distant matching from the newer one and
 * stops at the first call that does not increase the distance. Distances are
 * strictly increasing integers in [0, n], so there are at most n + 1 calls.
 */
inline SeparatedPair maximal_separated_pair(const BipartiteGraph& g, std::optional<Matching> start = std::nullopt) {
    if (!start) {
        auto s = find_perfect_matching(g);
        if (!s.feasible()) throw InfeasibleError("graph has no perfect matching");
        start = std::move(*s.matching);
    } else {
        require_valid(g, *start, "start matching");
    }
    SeparatedPair out;
    out.trace.steps.push_back({*start, 0, false});
    Matching a = *start, b = *start;
    Vertex d = 0;
    while (true) {
        auto r = most_distant_matching(g, b);
        const bool better = r.d_star > d;
        out.trace.steps.push_back({r.matching, r.d_star, better});
        if (!better) break;
        a = std::move(b);
        b = std::move(r.matching);
        d = r.d_star;
    }
    out.first = std::move(a);
    out.second = std::move(b);
    out.d = d;
    return out;
}

/// Exactly optimal pair by enumerating all matchings (at most `limit`).
inline SeparatedPair max_separated_pair_bruteforce(const BipartiteGraph& g, std::size_t limit) {
    auto all = enumerate_matchings(g, limit);
    if (!all.complete) throw LimitExceeded("more than " + std::to_string(limit) + " perfect matchings");
    if (all.matchings.empty()) throw InfeasibleError("graph has no perfect matching");
    const auto& ms = all.matchings;
    std::size_t bi = 0, bj = 0;
    Vertex best = 0;
    for (std::size_t i = 0; i < ms.size(); ++i) {
        for (std::size_t j = i + 1; j < ms.size(); ++j) {
            Vertex d = distance(ms[i], ms[j]);
            if (d > best) {
                best = d;
                bi = i;
                bj = j;
            }
        }
    }
    return {ms[bi], ms[bj], best, {}};
}

struct Addition {
    Matching matching;
    std::int64_t gain = 0;  // total distance from matching to the pool
};

/**
 * Matching with maximum total distance to `pool`. Each edge is weighted by
 * the number of pool members using it; a minimum-weight perfect matching M
 * then maximises sum_i distance(M, pool_i) = |pool| * n - weight(M).
 * The result may coincide with a pool member.
 */
inline Addition best_addition(const BipartiteGraph& g, const std::vector<Matching>& pool) {
    if (pool.empty()) throw UsageError("best_addition needs a non-empty pool");
    std::vector<std::int64_t> w(g.edge_count(), 0);
    for (const auto& m : pool) {
        require_valid(g, m, "pool member");
        for (Vertex u = 0; u < m.n(); ++u) ++w[static_cast<std::size_t>(g.edge_id(u, m[u]))];
    }
    auto r = min_weight_perfect_matching(g, EdgeWeighting(g, std::move(w)));
    if (!r.feasible()) throw InfeasibleError("graph has no perfect matching");
    return {std::move(*r.matching), static_cast<std::int64_t>(pool.size()) * g.n() - r.weight};
}

inline Addition best_addition(const BipartiteGraph& g, const MatchingPool& pool) { return best_addition(g, pool.members()); }

struct DiverseOptions {
    std::size_t k = 10;
    std::size_t restarts = 5;
    std::uint64_t seed = 0;
    std::size_t max_passes = 50;
};

struct DiversePoolResult {
    MatchingPool pool;  // members in lexicographic order
    std::size_t requested = 0;
    std::size_t best_restart = 0;

    bool shortfall() const { return pool.size() < requested; }
};

namespace detail {

inline bool push_unique(std::vector<Matching>& ms, const Matching& m) {
    if (std::find(ms.begin(), ms.end(), m) != ms.end()) return false;
    ms.push_back(m);
    return true;
}

/// A sampled matching outside `members`, or nullopt when none turned up.
inline std::optional<Matching> inject_sample(const BipartiteGraph& g, const std::vector<Matching>& members,
                                             std::uint64_t seed) {
    // Nothing to find if the pool already holds every matching.
    if (count_matchings(g, members.size())) return std::nullopt;
    return draw_matching(g, seed, [&](const Matching& m) {
        return std::find(members.begin(), members.end(), m) == members.end();
    });
}

inline std::int64_t contribution(const std::vector<Matching>& ms, std::size_t i) {
    std::int64_t s = 0;
    for (std::size_t j = 0; j < ms.size(); ++j) {
        if (j != i) s += distance(ms[i], ms[j]);
    }
    return s;
}

inline std::vector<Matching> build_pool(const BipartiteGraph& g, const DiverseOptions& opt, const Matching& start,
                                        std::uint64_t inject_seed) {
    std::vector<Matching> ms;
    if (auto dp = disjoint_pair(g)) {
        push_unique(ms, dp->first);
        push_unique(ms, dp->second);
    }
    auto mp = maximal_separated_pair(g, start);
    if (ms.size() < opt.k) push_unique(ms, mp.first);
    if (ms.size() < opt.k) push_unique(ms, mp.second);

    std::uint64_t injections = 0;
    while (ms.size() < opt.k) {
        auto add = best_addition(g, ms);
        if (push_unique(ms, add.matching)) continue;
        auto fresh = inject_sample(g, ms, inject_seed + 1000 * injections++);
        if (!fresh) break;
        ms.push_back(std::move(*fresh));
    }

    // Exact best replacement per member, accepted on strict improvement.
    for (std::size_t pass = 0; pass < opt.max_passes && ms.size() >= 2; ++pass) {
        bool improved = false;
        for (std::size_t i = 0; i < ms.size(); ++i) {
            std::vector<Matching> others;
            others.reserve(ms.size() - 1);
            for (std::size_t j = 0; j < ms.size(); ++j) {
                if (j != i) others.push_back(ms[j]);
            }
            auto add = best_addition(g, others);
            if (add.gain > contribution(ms, i) &&
                std::find(others.begin(), others.end(), add.matching) == others.end()) {
                ms[i] = std::move(add.matching);
                improved = true;
            }
        }
        if (!improved) break;
    }
    std::sort(ms.begin(), ms.end());
    return ms;
}

}  // namespace detail

/**
 * Pool of up to k distinct matchings with large total pairwise distance.
 *
 * Each restart seeds with the disjoint pair (when one exists) and a maximal
 * separated pair, grows by exact best additions (drawing a fresh matching
 * from the chain when the best addition is already present) and then runs replacement
 * local search. Restart 0 starts the separation iteration from
 * find_perfect_matching, restart r > 0 from a chain draw with seed
 * seed + r. The best pool wins; ties go to the lexicographically smaller
 * member list.
 */
inline DiversePoolResult diverse_pool(const BipartiteGraph& g, const DiverseOptions& opt) {
    if (opt.k < 2) throw UsageError("k must be at least 2");
    if (opt.restarts < 1) throw UsageError("restarts must be at least 1");
    auto first = find_perfect_matching(g);
    if (!first.feasible()) throw InfeasibleError("graph has no perfect matching");

    DiversePoolResult best;
    best.requested = opt.k;
    std::optional<std::vector<Matching>> best_members;
    std::int64_t best_obj = -1;
    for (std::size_t r = 0; r < opt.restarts; ++r) {
        const std::uint64_t rseed = opt.seed + r;
        std::optional<Matching> start = first.matching;
        if (r > 0) {
            start = draw_matching(g, rseed, [](const Matching&) { return true; });
            if (!start) throw LimitExceeded("sampler found no perfect matching to start restart " + std::to_string(r));
        }
        auto ms = detail::build_pool(g, opt, *start, rseed ^ 0x9e3779b97f4a7c15ULL);
        const std::int64_t obj = total_pairwise_distance(ms);
        if (obj > best_obj || (obj == best_obj && ms < *best_members)) {
            best_obj = obj;
            best_members = std::move(ms);
            best.best_restart = r;
        }
    }
    best.pool = MatchingPool(std::move(*best_members));
    return best;
}

inline DiversePoolResult diverse_pool(const BipartiteGraph& g, std::size_t k, std::size_t restarts, std::uint64_t seed) {
    DiverseOptions opt;
    opt.k = k;
    opt.restarts = restarts;
    opt.seed = seed;
    return diverse_pool(g, opt);
}

}  // namespace divmatch
