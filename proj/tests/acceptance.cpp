// Acceptance suite: one PASS/FAIL line per criterion over the fixed corpus
// (K_{n,n} n=1..6, C_{2n} n=2..6, instances B and C, 200 random graphs).

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "cli_support.hpp"
#include "corpus.hpp"
#include "divmatch/divmatch.hpp"
#include "oracle.hpp"

using namespace divmatch;
using namespace divmatch::testing;

namespace {

constexpr std::size_t kEnumerationLimit = 1000;  // K_{6,6} has 720
constexpr std::size_t kSmall = 20;
constexpr double kTvTolerance = 0.05;
constexpr std::uint64_t kSamples = 20'000;
constexpr std::uint64_t kSamplerSeed = 7;
constexpr double kExactTolerance = 1e-9;

struct Prepared {
    Instance inst;
    std::vector<Matching> all;  // enumerate_matchings, complete
};

std::vector<Prepared> prepare() {
    std::vector<Prepared> out;
    for (auto& inst : corpus()) {
        auto e = enumerate_matchings(inst.graph, kEnumerationLimit);
        if (!e.complete) throw std::runtime_error("corpus instance " + inst.name + " exceeds the enumeration limit");
        out.push_back({std::move(inst), std::move(e.matchings)});
    }
    return out;
}

class Failure {
   public:
    template <class... Args>
    void operator()(const Args&... args) {
        if (count_++ < 5) {
            std::ostringstream s;
            (s << ... << args);
            lines_.push_back(s.str());
        }
    }
    bool ok() const { return count_ == 0; }
    std::string summary() const {
        std::string s;
        for (const auto& l : lines_) s += "\n      " + l;
        if (count_ > lines_.size()) s += "\n      ... " + std::to_string(count_ - lines_.size()) + " more";
        return s;
    }

   private:
    std::size_t count_ = 0;
    std::vector<std::string> lines_;
};

struct Verdict {
    bool pass;
    std::string detail;
};

Verdict feasibility(const std::vector<Prepared>& corpus) {
    Failure fail;
    std::size_t feasible = 0;
    for (const auto& p : corpus) {
        bool solver = find_perfect_matching(p.inst.graph).feasible();
        feasible += solver;
        if (solver != !p.all.empty()) fail(p.inst.name, ": solver says ", solver, ", enumeration count ", p.all.size());
    }
    return {fail.ok(), std::to_string(corpus.size()) + " instances, " + std::to_string(feasible) + " feasible" + fail.summary()};
}

Verdict most_distant(const std::vector<Prepared>& corpus) {
    Failure fail;
    std::size_t checks = 0;
    for (const auto& p : corpus) {
        for (std::size_t i = 0; i < std::min(kSmall, p.all.size()); ++i) {
            const auto& m1 = p.all[i];
            auto r = most_distant_matching(p.inst.graph, m1);
            Vertex brute = oracle::max_distance_from(p.all, m1);
            ++checks;
            if (r.d_star != brute) fail(p.inst.name, ": d_star ", r.d_star, " vs brute force ", brute);
            if (distance(m1, r.matching) != r.d_star) fail(p.inst.name, ": witness distance disagrees with d_star");
        }
    }
    return {fail.ok(), std::to_string(checks) + " (instance, M1) checks" + fail.summary()};
}

Verdict disjoint(const std::vector<Prepared>& corpus) {
    Failure fail;
    std::size_t feasible = 0;
    std::string blocked;
    for (const auto& p : corpus) {
        const auto& g = p.inst.graph;
        auto pair = disjoint_pair(g);
        bool brute = oracle::has_disjoint_pair(p.all, g.n());
        if (pair.has_value() != brute) fail(p.inst.name, ": disjoint_pair ", pair.has_value(), " vs brute force ", brute);
        if (!pair) continue;
        ++feasible;
        const auto& [a, b] = *pair;
        if (!is_perfect_matching(g, a) || !is_perfect_matching(g, b)) fail(p.inst.name, ": invalid matching in pair");
        for (Vertex u = 0; u < g.n(); ++u) {
            if (a[u] == b[u]) fail(p.inst.name, ": pair shares edge at u", u + 1);
        }
        TwoFactor uni{g.n(), {}};
        for (Vertex u = 0; u < g.n(); ++u) {
            uni.edges.emplace_back(u, a[u]);
            uni.edges.emplace_back(u, b[u]);
        }
        std::sort(uni.edges.begin(), uni.edges.end());
        if (!uni.valid_for(g)) fail(p.inst.name, ": union of the pair is not 2-regular");
        if (blocked.empty()) {
            for (const auto& m1 : p.all) {
                if (!fully_disjoint_from(g, m1).feasible()) {
                    blocked = p.inst.name;
                    break;
                }
            }
        }
    }
    if (blocked.empty()) fail("no instance where a fixed M1 blocks disjointness although a disjoint pair exists");
    return {fail.ok(), std::to_string(feasible) + " instances with a disjoint pair; blocking example: " + blocked + fail.summary()};
}

Verdict maximal_iteration(const std::vector<Prepared>& corpus) {
    Failure fail;
    std::size_t runs = 0;
    for (const auto& p : corpus) {
        if (p.all.empty()) continue;
        const auto& g = p.inst.graph;
        auto r = maximal_separated_pair(g);
        ++runs;
        const auto& steps = r.trace.steps;
        for (std::size_t i = 1; i + 1 < steps.size(); ++i) {
            if (!(steps[i].improving && steps[i].distance > steps[i - 1].distance))
                fail(p.inst.name, ": trace not strictly increasing at step ", i);
        }
        if (steps.back().improving) fail(p.inst.name, ": trace does not end on a non-improving step");
        if (r.trace.iterations() > static_cast<std::size_t>(g.n()) + 1)
            fail(p.inst.name, ": ", r.trace.iterations(), " iterations > n + 1");
        if (most_distant_matching(g, r.first).d_star != r.d || most_distant_matching(g, r.second).d_star != r.d)
            fail(p.inst.name, ": final pair is not mutually maximal");
        if (distance(r.first, r.second) != r.d) fail(p.inst.name, ": reported d differs from the pair distance");
    }
    auto c = maximal_separated_pair(instance_c(), m_a());
    if (c.d != 3 || c.trace.improving_steps() != 2) fail("instance C from Ma: d = ", c.d, " after ", c.trace.improving_steps(), " improving steps");
    return {fail.ok(), std::to_string(runs) + " runs; instance C from Ma: d = " + std::to_string(c.d) + " in " +
                           std::to_string(c.trace.improving_steps()) + " improving steps" + fail.summary()};
}

Verdict exact_greedy(const std::vector<Prepared>& corpus) {
    Failure fail;
    std::size_t pools = 0;
    for (const auto& p : corpus) {
        if (p.all.empty() || p.all.size() > kSmall) continue;
        const auto& all = p.all;
        auto check = [&](const std::vector<Matching>& pool) {
            ++pools;
            auto got = best_addition(p.inst.graph, pool).gain;
            auto want = oracle::best_gain(all, pool);
            if (got != want) fail(p.inst.name, ": pool of ", pool.size(), " gain ", got, " vs brute force ", want);
        };
        for (std::size_t i = 0; i < all.size(); ++i) {
            check({all[i]});
            for (std::size_t j = i + 1; j < all.size(); ++j) {
                check({all[i], all[j]});
                for (std::size_t k = j + 1; k < all.size(); ++k) check({all[i], all[j], all[k]});
            }
        }
    }
    return {fail.ok(), std::to_string(pools) + " pools checked" + fail.summary()};
}

Verdict counting(const std::vector<Prepared>& corpus) {
    Failure fail;
    for (const auto& p : corpus) {
        if (p.all != oracle::all_matchings(p.inst.graph)) fail(p.inst.name, ": enumeration differs from the permutation oracle");
    }
    std::size_t factorial = 1;
    for (Vertex n = 1; n <= 6; ++n) {
        factorial *= static_cast<std::size_t>(n);
        auto e = enumerate_matchings(complete(n), kEnumerationLimit);
        if (!e.complete || e.count != factorial) fail("K", n, ",", n, ": count ", e.count.value_or(0), " vs ", factorial);
    }
    for (Vertex n = 2; n <= 6; ++n) {
        auto e = enumerate_matchings(even_cycle(n), kEnumerationLimit);
        if (!e.complete || e.count != 2u) fail("C", 2 * n, ": count ", e.count.value_or(0));
    }
    return {fail.ok(), "K_{n,n} n=1..6 and C_{2n} n=2..6; enumeration matches the permutation oracle on all " +
                           std::to_string(corpus.size()) + " instances" + fail.summary()};
}

Verdict sampler(const std::vector<Prepared>& corpus) {
    Failure fail;
    std::size_t instances = 0;
    double worst = 0;
    std::string worst_name;
    for (const auto& p : corpus) {
        if (p.all.size() < 2 || p.all.size() > kSmall) continue;
        ++instances;
        auto samples = mcmc_sample(p.inst.graph, ChainConfig::defaults(p.inst.graph.n(), kSamplerSeed, kSamples));
        double tv = oracle::tv_to_uniform(p.all, samples);
        if (tv > worst) {
            worst = tv;
            worst_name = p.inst.name;
        }
        if (tv > kTvTolerance) fail(p.inst.name, ": TV ", tv);
    }
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.4f", worst);
    return {fail.ok(), std::to_string(instances) + " instances, max TV " + buf + " (" + worst_name + "), tolerance 0.05" + fail.summary()};
}

Verdict audit() {
    Failure fail;
    AuditOptions opt;
    opt.k = 2;
    auto cmp = compare_policies(instance_c(), opt);
    if (std::abs(cmp.uniform.adversary_success - 5.0 / 9.0) > kExactTolerance)
        fail("uniform success ", cmp.uniform.adversary_success, " vs 5/9");
    if (std::abs(cmp.pool.adversary_success - 0.5) > kExactTolerance) fail("pool success ", cmp.pool.adversary_success, " vs 1/2");
    if (!cmp.pool_less_predictable()) fail("pool policy not marked less predictable");
    char buf[128];
    std::snprintf(buf, sizeof buf, "uniform %.10f, pool %.10f, difference %.10f", cmp.uniform.adversary_success,
                  cmp.pool.adversary_success, cmp.difference);
    return {fail.ok(), buf + fail.summary()};
}

Verdict determinism() {
    Failure fail;
    Workspace ws;
    auto c = ws.write("c.txt", serialize_graph(instance_c()));
    auto k5 = ws.write("k5.txt", serialize_graph(complete(5)));
    auto randoms = random_instances();
    auto feasible = std::find_if(randoms.rbegin(), randoms.rend(),
                                 [](const Instance& i) { return find_perfect_matching(i.graph).feasible(); });
    auto rnd = ws.write("r.txt", serialize_graph(feasible->graph));
    const std::vector<std::vector<std::string>> invocations{
        {"diverse", c, "--k", "3", "--seed", "5"},
        {"diverse", k5, "--k", "10", "--seed", "11", "--restarts", "3"},
        {"sample", c, "--count", "500", "--seed", "7"},
        {"sample", rnd, "--count", "200", "--seed", "1"},
        {"audit", c, "--k", "2", "--seed", "3"},
        {"audit", k5, "--k", "4", "--limit", "50", "--count", "1000", "--seed", "9"},
    };
    for (auto args : invocations) {
        args.insert(args.end(), {"--format", "json"});
        auto a = run_cli(args), b = run_cli(args);
        if (a.code != b.code) fail(args[0], ": exit codes differ");
        if (a.code != 0) fail(args[0], ": exit ", a.code, " ", a.err);
        else if (a.masked() != b.masked()) fail(args[0], " on ", args[1], ": outputs differ");
    }
    return {fail.ok(), std::to_string(invocations.size()) + " invocation pairs compared with timing_ms masked" + fail.summary()};
}

Verdict metric(const std::vector<Prepared>& corpus) {
    Failure fail;
    std::size_t triples = 0;
    for (const auto& p : corpus) {
        if (p.all.size() > kSmall) continue;
        const auto& all = p.all;
        for (const auto& a : all) {
            for (const auto& b : all) {
                Vertex dab = distance(a, b);
                if (dab != distance(b, a)) fail(p.inst.name, ": asymmetric");
                if ((dab == 0) != (a == b)) fail(p.inst.name, ": identity of indiscernibles");
                if (dab == 1) fail(p.inst.name, ": distance 1");
                if (dab < 0 || dab > p.inst.graph.n()) fail(p.inst.name, ": distance out of [0, n]");
                for (const auto& c : all) {
                    ++triples;
                    if (distance(a, c) > dab + distance(b, c)) fail(p.inst.name, ": triangle inequality");
                }
            }
        }
    }
    return {fail.ok(), std::to_string(triples) + " triples" + fail.summary()};
}

}  // namespace

int main() {
    const auto t0 = std::chrono::steady_clock::now();
    auto corpus = prepare();
    const std::vector<std::pair<std::string, std::function<Verdict()>>> criteria{
        {"1 oracle equivalence: feasibility", [&] { return feasibility(corpus); }},
        {"2 oracle equivalence: most distant", [&] { return most_distant(corpus); }},
        {"3 disjoint pair", [&] { return disjoint(corpus); }},
        {"4 maximal-separation iteration", [&] { return maximal_iteration(corpus); }},
        {"5 exact greedy step", [&] { return exact_greedy(corpus); }},
        {"6 counting", [&] { return counting(corpus); }},
        {"7 sampler uniformity", [&] { return sampler(corpus); }},
        {"8 predictability audit", [&] { return audit(); }},
        {"9 determinism", [&] { return determinism(); }},
        {"10 metric properties", [&] { return metric(corpus); }},
    };
    int failed = 0;
    for (const auto& [name, check] : criteria) {
        const auto start = std::chrono::steady_clock::now();
        Verdict v{false, ""};
        try {
            v = check();
        } catch (const std::exception& e) {
            v = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        std::printf("[%s] criterion %s (%.2fs): %s\n", v.pass ? "PASS" : "FAIL", name.c_str(), secs, v.detail.c_str());
        failed += !v.pass;
    }
    const double total = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("%d/%zu criteria passed in %.1fs\n", static_cast<int>(criteria.size()) - failed, criteria.size(), total);
    return failed == 0 ? 0 : 1;
}
