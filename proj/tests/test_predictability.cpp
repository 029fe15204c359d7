#include <gtest/gtest.h>

#include <cmath>

#include "corpus.hpp"
#include "divmatch/predictability.hpp"

using namespace divmatch;
using namespace divmatch::testing;

TEST(ExactMarginals, Examples) {
    auto b = exact_marginals(enumerate_matchings(instance_b(), 10));
    EXPECT_EQ(b.p(0, 0), 1.0);
    EXPECT_EQ(b.p(1, 1), 1.0);
    EXPECT_EQ(b.p(1, 0), 0.0);

    auto k = exact_marginals(enumerate_matchings(complete(2), 10));
    for (Vertex u = 0; u < 2; ++u)
        for (Vertex v = 0; v < 2; ++v) EXPECT_EQ(k.p(u, v), 0.5);

    auto c = exact_marginals(enumerate_matchings(instance_c(), 10));
    EXPECT_EQ(c.denominator(), 3);
    EXPECT_EQ(c.count(0, 0), 2);
    EXPECT_EQ(c.count(0, 1), 1);
    EXPECT_EQ(c.count(2, 2), 2);
    EXPECT_EQ(c.count(2, 1), 1);
    for (Vertex v = 0; v < 3; ++v) EXPECT_EQ(c.count(1, v), 1);
}

TEST(ExactMarginals, RequiresCompleteEnumeration) {
    EXPECT_THROW(exact_marginals(enumerate_matchings(complete(4), 5)), UsageError);
    EXPECT_THROW(exact_marginals(enumerate_matchings(BipartiteGraph(2, {{0, 0}, {1, 0}}), 5)), UsageError);
}

TEST(EmpiricalMarginals, Examples) {
    auto one = empirical_marginals(std::vector<Matching>(100, m_b()));
    for (Vertex u = 0; u < 3; ++u)
        for (Vertex v = 0; v < 3; ++v) EXPECT_EQ(one.p(u, v), m_b()[u] == v ? 1.0 : 0.0);

    auto e = empirical_marginals({m_a(), m_b(), m_c()});
    EXPECT_EQ(e, exact_marginals(enumerate_matchings(instance_c(), 10)));

    EXPECT_THROW(empirical_marginals({m_a(), Matching({0, 1})}), UsageError);
    EXPECT_THROW(empirical_marginals({}), UsageError);
}

TEST(AdversarySuccess, Examples) {
    EXPECT_DOUBLE_EQ(adversary_success(exact_marginals(enumerate_matchings(instance_b(), 10))), 1.0);
    EXPECT_DOUBLE_EQ(adversary_success(exact_marginals(enumerate_matchings(complete(2), 10))), 0.5);
    EXPECT_NEAR(adversary_success(exact_marginals(enumerate_matchings(instance_c(), 10))), 5.0 / 9.0, 1e-9);
}

TEST(AdversarySuccess, UniformRowsGiveOneOverN) {
    for (Vertex n = 1; n <= 5; ++n) {
        auto t = exact_marginals(enumerate_matchings(complete(n), 1000));
        EXPECT_NEAR(adversary_success(t), 1.0 / n, 1e-12);
    }
}

TEST(Entropy, IndicatorAndUniformRows) {
    auto r = make_report("x", exact_marginals(enumerate_matchings(instance_c(), 10)), Provenance::Exact, 3);
    EXPECT_NEAR(r.per_vertex_entropy[1], std::log(3.0), 1e-12);  // row u2 uniform
    EXPECT_NEAR(r.per_vertex_normalized_entropy[1], 1.0, 1e-12);
    const double h = -(2.0 / 3) * std::log(2.0 / 3) - (1.0 / 3) * std::log(1.0 / 3);
    EXPECT_NEAR(r.per_vertex_entropy[0], h, 1e-12);

    auto b = make_report("b", exact_marginals(enumerate_matchings(instance_b(), 10)), Provenance::Exact, 1);
    EXPECT_EQ(b.per_vertex_entropy[0], 0.0);
    EXPECT_EQ(b.per_vertex_entropy[1], 0.0);
}

TEST(Marginals, RowsSumToOneAndRespectEdges) {
    for (const auto& inst : random_instances()) {
        auto e = enumerate_matchings(inst.graph, 1000);
        if (e.matchings.empty()) continue;
        auto t = exact_marginals(e);
        for (Vertex u = 0; u < t.n(); ++u) {
            EXPECT_NEAR(t.row_sum(u), 1.0, 1e-9);
            for (Vertex v = 0; v < t.n(); ++v) {
                if (t.p(u, v) > 0) {
                    EXPECT_TRUE(inst.graph.has_edge(u, v));
                }
            }
        }
        const double s = adversary_success(t);
        EXPECT_GE(s, 1.0 / t.n() - 1e-12);
        EXPECT_LE(s, 1.0 + 1e-12);
    }
}

TEST(ComparePolicies, InstanceC) {
    AuditOptions opt;
    opt.k = 2;
    auto cmp = compare_policies(instance_c(), opt);
    EXPECT_NEAR(cmp.uniform.adversary_success, 5.0 / 9.0, 1e-9);
    EXPECT_NEAR(cmp.pool.adversary_success, 0.5, 1e-9);
    EXPECT_NEAR(cmp.difference, 1.0 / 18.0, 1e-9);
    EXPECT_TRUE(cmp.pool_less_predictable());
    EXPECT_EQ(cmp.uniform.provenance, Provenance::Exact);
    EXPECT_EQ(cmp.pool_members.members(), (std::vector<Matching>{m_b(), m_c()}));
}

TEST(ComparePolicies, NoDiversityPossible) {
    auto cmp = compare_policies(instance_b(), AuditOptions{});
    EXPECT_DOUBLE_EQ(cmp.uniform.adversary_success, 1.0);
    EXPECT_DOUBLE_EQ(cmp.pool.adversary_success, 1.0);
    EXPECT_FALSE(cmp.pool_less_predictable());
}

TEST(ComparePolicies, TwoByTwo) {
    AuditOptions opt;
    opt.k = 2;
    auto cmp = compare_policies(complete(2), opt);
    EXPECT_DOUBLE_EQ(cmp.uniform.adversary_success, 0.5);
    EXPECT_DOUBLE_EQ(cmp.pool.adversary_success, 0.5);
}

TEST(ComparePolicies, FallsBackToSamplingPastTheLimit) {
    AuditOptions opt;
    opt.k = 3;
    opt.limit = 10;
    opt.trials = 2000;
    opt.seed = 4;
    auto cmp = compare_policies(complete(4), opt);
    EXPECT_EQ(cmp.uniform.provenance, Provenance::Estimated);
    EXPECT_EQ(cmp.uniform.support, 2000u);
    EXPECT_EQ(cmp.uniform.seed, 4u);
    EXPECT_NEAR(cmp.uniform.adversary_success, 0.25, 0.05);
    EXPECT_THROW(compare_policies(BipartiteGraph(2, {{0, 0}, {1, 0}}), opt), InfeasibleError);
}
