#pragma once

#include <chrono>
#include <functional>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "diversity.hpp"
#include "graph.hpp"
#include "io.hpp"
#include "predictability.hpp"
#include "sampling.hpp"
#include "solvers.hpp"

namespace divmatch::cli {

enum ExitCode : int { kOk = 0, kUsage = 1, kInfeasible = 2, kLimit = 3 };

using Json = nlohmann::ordered_json;

/// Flags shared by all subcommands; each subcommand registers only the ones
/// it accepts.
struct RunConfig {
    std::string command;
    std::string graph_path;
    std::optional<std::string> given_path;
    std::optional<int> d;
    std::size_t k = 10;
    std::uint64_t seed = 0;
    std::size_t restarts = 5;
    std::optional<std::uint64_t> count;
    std::optional<std::uint64_t> burn_in;
    std::optional<std::uint64_t> thinning;
    std::size_t limit = 100'000;
    std::string format = "human";
};

namespace detail {

/// Ends a run early with a given exit code after the document is written.
struct Outcome {
    ExitCode code = kOk;
    std::string message;
};

class Emitter {
   public:
    explicit Emitter(const BipartiteGraph& g) : g_(g) {}

    Json matching(const Matching& m) const {
        if (!is_perfect_matching(g_, m)) throw std::logic_error("refusing to print an invalid matching");
        return pairs_json(m);
    }

    Json report(const PredictabilityReport& r) const {
        Json j;
        j["label"] = r.label;
        j["provenance"] = to_string(r.provenance);
        j["support"] = r.support;
        j["seed"] = r.seed ? Json(*r.seed) : Json(nullptr);
        j["adversary_success"] = r.adversary_success;
        j["per_vertex_best_guess"] = r.per_vertex_best_guess;
        j["per_vertex_entropy"] = r.per_vertex_entropy;
        j["per_vertex_normalized_entropy"] = r.per_vertex_normalized_entropy;
        Json rows = Json::array();
        for (Vertex u = 0; u < r.marginals.n(); ++u) {
            Json row = Json::array();
            for (Vertex v = 0; v < r.marginals.n(); ++v) row.push_back(r.marginals.p(u, v));
            rows.push_back(std::move(row));
        }
        j["marginals"] = std::move(rows);
        return j;
    }

   private:
    const BipartiteGraph& g_;
};

inline Matching load_given(const BipartiteGraph& g, const std::string& path) {
    Matching m = load_matching(path);
    if (m.n() != g.n()) {
        throw UsageError("matching file has n = " + std::to_string(m.n()) + " but the graph has n = " + std::to_string(g.n()));
    }
    require_valid(g, m, "matching file");
    return m;
}

inline Outcome execute(const RunConfig& cfg, const BipartiteGraph& g, Json& result) {
    Emitter emit(g);
    const std::string& cmd = cfg.command;

    if (cmd == "solve") {
        auto r = find_perfect_matching(g);
        result["status"] = r.feasible() ? "feasible" : "infeasible";
        if (!r.feasible()) return {kInfeasible, "graph has no perfect matching"};
        result["matching"] = emit.matching(*r.matching);
    } else if (cmd == "distant") {
        Matching given = load_given(g, *cfg.given_path);
        auto r = most_distant_matching(g, given);
        result["given"] = emit.matching(given);
        result["matching"] = emit.matching(r.matching);
        result["d_star"] = r.d_star;
        result["overlap"] = r.overlap;
        if (cfg.d) {
            auto dec = distant_matching_decision(g, given, *cfg.d);
            result["d"] = *cfg.d;
            result["answer"] = dec.yes;
            result["witness"] = dec.witness ? emit.matching(*dec.witness) : Json(nullptr);
        }
    } else if (cmd == "maximal-pair") {
        std::optional<Matching> start;
        if (cfg.given_path) start = load_given(g, *cfg.given_path);
        auto p = maximal_separated_pair(g, start);
        result["first"] = emit.matching(p.first);
        result["second"] = emit.matching(p.second);
        result["d"] = p.d;
        result["iterations"] = p.trace.iterations();
        result["improving_steps"] = p.trace.improving_steps();
        Json trace = Json::array();
        for (const auto& s : p.trace.steps) {
            trace.push_back({{"matching", emit.matching(s.matching)}, {"distance", s.distance}, {"improving", s.improving}});
        }
        result["trace"] = std::move(trace);
    } else if (cmd == "max-pair-exact") {
        auto p = max_separated_pair_bruteforce(g, cfg.limit);
        result["first"] = emit.matching(p.first);
        result["second"] = emit.matching(p.second);
        result["d_max"] = p.d;
    } else if (cmd == "disjoint-pair") {
        auto tf = two_factor(g);
        result["status"] = tf ? "feasible" : "infeasible";
        if (!tf) return {kInfeasible, "graph has no two edge-disjoint perfect matchings"};
        auto [a, b] = split_two_factor(*tf);
        result["first"] = emit.matching(a);
        result["second"] = emit.matching(b);
        result["distance"] = distance(a, b);
        Json edges = Json::array();
        for (auto [u, v] : tf->edges) edges.push_back({u + 1, v + 1});
        result["two_factor"] = std::move(edges);
    } else if (cmd == "diverse") {
        auto dp = diverse_pool(g, cfg.k, cfg.restarts, cfg.seed);
        result["k"] = cfg.k;
        result["restarts"] = cfg.restarts;
        result["size"] = dp.pool.size();
        result["shortfall"] = dp.shortfall();
        result["objective"] = dp.pool.objective();
        result["min_pairwise_distance"] = dp.pool.min_pairwise_distance();
        Json members = Json::array();
        for (const auto& m : dp.pool.members()) members.push_back(emit.matching(m));
        result["members"] = std::move(members);
        result["secret"] = emit.matching(select_secret(dp.pool, cfg.seed));
    } else if (cmd == "sample") {
        auto chain = ChainConfig::defaults(g.n(), cfg.seed, cfg.count.value_or(1000));
        if (cfg.burn_in) chain.burn_in_steps = *cfg.burn_in;
        if (cfg.thinning) chain.thinning_interval = *cfg.thinning;
        result["burn_in"] = chain.burn_in_steps;
        result["thinning"] = chain.thinning_interval;
        result["sample_count"] = chain.sample_count;
        auto samples = mcmc_sample(g, chain);
        Json list = Json::array();
        for (const auto& m : samples) list.push_back(emit.matching(m));
        result["samples"] = std::move(list);
    } else if (cmd == "enumerate") {
        auto e = enumerate_matchings(g, cfg.limit);
        result["complete"] = e.complete;
        result["count"] = e.count ? Json(*e.count) : Json(nullptr);
        Json list = Json::array();
        for (const auto& m : e.matchings) list.push_back(emit.matching(m));
        result["matchings"] = std::move(list);
        if (!e.complete) return {kLimit, "more than " + std::to_string(cfg.limit) + " perfect matchings"};
    } else if (cmd == "count") {
        auto c = count_matchings(g, cfg.limit);
        result["count"] = c ? Json(*c) : Json(nullptr);
        if (!c) return {kLimit, "more than " + std::to_string(cfg.limit) + " perfect matchings"};
    } else if (cmd == "audit") {
        AuditOptions opt;
        opt.k = cfg.k;
        opt.restarts = cfg.restarts;
        opt.seed = cfg.seed;
        opt.limit = cfg.limit;
        if (cfg.count) opt.trials = *cfg.count;
        auto cmp = compare_policies(g, opt);
        result["uniform"] = emit.report(cmp.uniform);
        result["pool"] = emit.report(cmp.pool);
        Json members = Json::array();
        for (const auto& m : cmp.pool_members.members()) members.push_back(emit.matching(m));
        result["pool_members"] = std::move(members);
        result["difference"] = cmp.difference;
        result["pool_less_predictable"] = cmp.pool_less_predictable();
    }
    return {};
}

inline void write_human(std::ostream& out, const Json& doc) {
    out << "command: " << doc["command"].get<std::string>() << '\n';
    out << "instance: n=" << doc["instance"]["n"] << " m=" << doc["instance"]["m"] << '\n';
    for (const auto& [key, value] : doc["result"].items()) out << key << ": " << value.dump() << '\n';
    out << "timing_ms: " << doc["timing_ms"] << '\n';
}

}  // namespace detail

/**
 * Runs one CLI invocation. `args` excludes the program name. Writes exactly
 * one document to `out` on success or on infeasible/limit outcomes, and all
 * diagnostics to `err`.
 *
 * Exit codes: 0 success, 1 usage or parse error, 2 infeasible instance,
 * 3 limit or sampling budget exceeded.
 */
inline int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
    RunConfig cfg;
    CLI::App app{"Diverse and unpredictable perfect matchings in bipartite graphs", "divmatch"};
    app.require_subcommand(1);

    auto base = [&](const std::string& name, const std::string& help) {
        CLI::App* sub = app.add_subcommand(name, help);
        sub->add_option("graph", cfg.graph_path, "graph file")->required();
        sub->add_option("--format", cfg.format, "output format")
            ->check(CLI::IsMember({"human", "json", "structured"}));
        sub->callback([&cfg, name] { cfg.command = name; });
        return sub;
    };
    auto add_given = [&](CLI::App* s, bool required) {
        auto* o = s->add_option("--given", cfg.given_path, "matching file {\"n\": ..., \"pairs\": [[u, v], ...]}");
        if (required) o->required();
    };
    auto add_seed = [&](CLI::App* s) { s->add_option("--seed", cfg.seed, "random seed"); };
    auto add_limit = [&](CLI::App* s) { s->add_option("--limit", cfg.limit, "enumeration limit"); };
    auto add_pool = [&](CLI::App* s) {
        s->add_option("--k", cfg.k, "pool size")->check(CLI::Range(std::size_t{2}, std::numeric_limits<std::size_t>::max()));
        s->add_option("--restarts", cfg.restarts, "independent restarts")
            ->check(CLI::Range(std::size_t{1}, std::numeric_limits<std::size_t>::max()));
    };

    base("solve", "find a perfect matching");
    auto* distant = base("distant", "most distant matching from a given one");
    add_given(distant, true);
    distant->add_option("--d", cfg.d, "decision threshold");
    add_given(base("maximal-pair", "mutually most-distant pair by iteration"), false);
    add_limit(base("max-pair-exact", "maximum separated pair by enumeration"));
    base("disjoint-pair", "two edge-disjoint perfect matchings via a 2-factor");
    auto* diverse = base("diverse", "diverse pool of k matchings");
    add_pool(diverse);
    add_seed(diverse);
    auto* sample = base("sample", "near-uniform matchings by MCMC");
    add_seed(sample);
    sample->add_option("--count", cfg.count, "samples to collect")->check(CLI::PositiveNumber);
    sample->add_option("--burnin", cfg.burn_in, "burn-in steps")->check(CLI::PositiveNumber);
    sample->add_option("--thin", cfg.thinning, "thinning interval")->check(CLI::PositiveNumber);
    add_limit(base("enumerate", "list all perfect matchings"));
    add_limit(base("count", "count perfect matchings"));
    auto* audit = base("audit", "predictability of uniform-all vs uniform-pool policies");
    add_pool(audit);
    add_seed(audit);
    add_limit(audit);
    audit->add_option("--count", cfg.count, "chain samples when enumeration exceeds the limit")->check(CLI::PositiveNumber);

    std::reverse(args.begin(), args.end());
    try {
        app.parse(args);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    }

    const auto t0 = std::chrono::steady_clock::now();
    Json doc;
    detail::Outcome outcome;
    try {
        BipartiteGraph g = load_graph(cfg.graph_path);
        doc["command"] = cfg.command;
        Json echo;
        echo["graph"] = cfg.graph_path;
        if (cfg.given_path) echo["given"] = *cfg.given_path;
        if (cfg.d) echo["d"] = *cfg.d;
        doc["args"] = std::move(echo);
        doc["instance"] = {{"n", g.n()}, {"m", g.edge_count()}};
        const bool seeded = cfg.command == "diverse" || cfg.command == "sample" || cfg.command == "audit";
        doc["seed"] = seeded ? Json(cfg.seed) : Json(nullptr);
        Json result = Json::object();
        outcome = detail::execute(cfg, g, result);
        doc["result"] = std::move(result);
    } catch (const ParseError& e) {
        err << "error: " << cfg.graph_path << ": " << e.what() << '\n';
        return kUsage;
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const InfeasibleError& e) {
        err << "infeasible: " << e.what() << '\n';
        return kInfeasible;
    } catch (const LimitExceeded& e) {
        err << "limit exceeded: " << e.what() << '\n';
        return kLimit;
    }
    doc["timing_ms"] = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();

    if (cfg.format == "human") {
        detail::write_human(out, doc);
    } else {
        out << doc.dump(2) << '\n';
    }
    if (outcome.code != kOk) {
        err << (outcome.code == kInfeasible ? "infeasible: " : "limit exceeded: ") << outcome.message << '\n';
    }
    return outcome.code;
}

inline int run(int argc, char** argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return run(std::move(args), out, err);
}

}  // namespace divmatch::cli
