#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "diversity.hpp"
#include "graph.hpp"
#include "sampling.hpp"

namespace divmatch {

enum class Provenance { Exact, Estimated };

inline const char* to_string(Provenance p) { return p == Provenance::Exact ? "exact" : "estimated"; }

/**
 * p[u][v]: probability that a policy assigns u to v, stored as integer
 * counts over one shared denominator (matching count or sample count).
 */
class MarginalTable {
   public:
    MarginalTable() = default;
    MarginalTable(Vertex n, std::int64_t denominator) : n_(n), denom_(denominator), counts_(static_cast<std::size_t>(n) * n, 0) {}

    Vertex n() const { return n_; }
    std::int64_t denominator() const { return denom_; }
    std::int64_t count(Vertex u, Vertex v) const { return counts_[index(u, v)]; }
    double p(Vertex u, Vertex v) const { return static_cast<double>(count(u, v)) / static_cast<double>(denom_); }

    void add(const Matching& m) {
        for (Vertex u = 0; u < n_; ++u) ++counts_[index(u, m[u])];
    }

    double row_sum(Vertex u) const {
        double s = 0;
        for (Vertex v = 0; v < n_; ++v) s += p(u, v);
        return s;
    }

    bool operator==(const MarginalTable&) const = default;

   private:
    std::size_t index(Vertex u, Vertex v) const { return static_cast<std::size_t>(u) * n_ + v; }

    Vertex n_ = 0;
    std::int64_t denom_ = 1;
    std::vector<std::int64_t> counts_;
};

namespace detail {

inline MarginalTable tally(const std::vector<Matching>& ms) {
    MarginalTable t(ms.front().n(), static_cast<std::int64_t>(ms.size()));
    for (const auto& m : ms) {
        if (m.n() != t.n()) throw UsageError("matchings of different sizes in one marginal table");
        t.add(m);
    }
    return t;
}

}  // namespace detail

inline MarginalTable exact_marginals(const EnumerationResult& e) {
    if (!e.complete) throw UsageError("exact marginals need a complete enumeration");
    if (e.matchings.empty()) throw UsageError("exact marginals need at least one matching");
    return detail::tally(e.matchings);
}

inline MarginalTable empirical_marginals(const std::vector<Matching>& samples) {
    if (samples.empty()) throw UsageError("empirical marginals need at least one sample");
    return detail::tally(samples);
}

inline double best_guess(const MarginalTable& t, Vertex u) {
    std::int64_t top = 0;
    for (Vertex v = 0; v < t.n(); ++v) top = std::max(top, t.count(u, v));
    return static_cast<double>(top) / static_cast<double>(t.denominator());
}

/// Mean over u of max_v p[u][v]. An empty table (n = 0) scores 1.
inline double adversary_success(const MarginalTable& t) {
    if (t.n() == 0) return 1.0;
    double s = 0;
    for (Vertex u = 0; u < t.n(); ++u) s += best_guess(t, u);
    return s / t.n();
}

/// Shannon entropy of row u in nats.
inline double row_entropy(const MarginalTable& t, Vertex u) {
    double h = 0;
    for (Vertex v = 0; v < t.n(); ++v) {
        double p = t.p(u, v);
        if (p > 0) h -= p * std::log(p);
    }
    return h;
}

struct PredictabilityReport {
    std::string label;
    MarginalTable marginals;
    std::vector<double> per_vertex_best_guess;
    std::vector<double> per_vertex_entropy;
    std::vector<double> per_vertex_normalized_entropy;  // entropy / log n, 0 when n <= 1
    double adversary_success = 1.0;
    Provenance provenance = Provenance::Exact;
    std::size_t support = 0;  // matchings or samples the table was built from
    std::optional<std::uint64_t> seed;
};

inline PredictabilityReport make_report(std::string label, MarginalTable t, Provenance prov, std::size_t support,
                                        std::optional<std::uint64_t> seed = std::nullopt) {
    PredictabilityReport r;
    r.label = std::move(label);
    const Vertex n = t.n();
    const double log_n = n > 1 ? std::log(static_cast<double>(n)) : 0.0;
    for (Vertex u = 0; u < n; ++u) {
        r.per_vertex_best_guess.push_back(best_guess(t, u));
        double h = row_entropy(t, u);
        r.per_vertex_entropy.push_back(h);
        r.per_vertex_normalized_entropy.push_back(log_n > 0 ? h / log_n : 0.0);
    }
    r.adversary_success = adversary_success(t);
    r.marginals = std::move(t);
    r.provenance = prov;
    r.support = support;
    r.seed = seed;
    return r;
}

struct AuditOptions {
    std::size_t k = 10;
    std::size_t restarts = 5;
    std::uint64_t seed = 0;
    std::uint64_t trials = 20'000;  // chain samples when enumeration is cut off
    std::size_t limit = 100'000;
};

struct PolicyComparison {
    PredictabilityReport uniform;  // uniform over all perfect matchings
    PredictabilityReport pool;     // uniform over a diverse pool
    MatchingPool pool_members;
    /// uniform.adversary_success - pool.adversary_success; positive means the
    /// pool policy is harder to guess.
    double difference = 0;
    bool pool_less_predictable() const { return difference > 0; }
};

/**
 * Uniform-over-all-solutions policy against uniform-over-diverse-pool.
 * The first is exact when enumeration stays under the limit, otherwise it
 * is estimated from chain samples. The measured difference may take either
 * sign.
 */
inline PolicyComparison compare_policies(const BipartiteGraph& g, const AuditOptions& opt) {
    if (!find_perfect_matching(g).feasible()) throw InfeasibleError("graph has no perfect matching");
    PolicyComparison out;
    auto all = enumerate_matchings(g, opt.limit);
    if (all.complete) {
        out.uniform = make_report("uniform-all", exact_marginals(all), Provenance::Exact, all.matchings.size());
    } else {
        auto samples = mcmc_sample(g, ChainConfig::defaults(g.n(), opt.seed, opt.trials));
        out.uniform = make_report("uniform-all", empirical_marginals(samples), Provenance::Estimated, samples.size(), opt.seed);
    }
    auto dp = diverse_pool(g, opt.k, opt.restarts, opt.seed);
    out.pool = make_report("uniform-pool", detail::tally(dp.pool.members()), Provenance::Exact, dp.pool.size(), opt.seed);
    out.pool_members = std::move(dp.pool);
    out.difference = out.uniform.adversary_success - out.pool.adversary_success;
    return out;
}

}  // namespace divmatch
