#include <random>

#include <gtest/gtest.h>

#include "brute_force.hpp"
#include "eod/errors.hpp"
#include "eod/oracle.hpp"
#include "fixtures.hpp"
#include "random_instances.hpp"

namespace eod {
namespace {

using testing::attrs;
using testing::id;

Statement stmt_of(const Relation& r, const char* lhs, const char* rhs, Operator op = Operator::Leq) {
    return {{id(r, lhs)}, {id(r, rhs)}, op, AttributeSet{id(r, lhs), id(r, rhs)}};
}

// Minimum ignored count over every superset, from the definition alone.
std::optional<std::size_t> brute_min_ignored(const Relation& r, const Statement& s) {
    std::vector<AttrId> free;
    for (AttrId a = 0; a < r.num_attributes(); ++a) {
        if (!s.embedding.contains(a)) free.push_back(a);
    }
    const auto base = testing::brute_complete(r, s.embedding).size();
    std::optional<std::size_t> best;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << free.size()); ++mask) {
        AttributeSet e = s.embedding;
        for (std::size_t i = 0; i < free.size(); ++i) {
            if (mask >> i & 1U) e.insert(free[i]);
        }
        const auto u = testing::brute_complete(r, e);
        if (testing::brute_valid(r, s, u) && (!best || base - u.size() < *best)) best = base - u.size();
    }
    return best;
}

Relation hardness_with_nulls() {
    return gen_hardness_instance(4, {{"C", {1, 3}}, {"D", {2}}});
}

TEST(NaiveValidate, SampleFindsSizeThreeEmbedding) {
    const Relation r = testing::sample();
    const auto o = naive_validate(r, stmt_of(r, "A", "B"));
    EXPECT_EQ(o.verdict, Verdict::ValidWith);
    EXPECT_EQ(o.embedding.size(), 3u);
    EXPECT_TRUE(o.embedding.contains(id(r, "D")) || o.embedding.contains(id(r, "G")));
    EXPECT_EQ(o.embedding, attrs(r, {"A", "B", "D"}));
}

TEST(NaiveValidate, EmployeesValid) {
    const Relation r = testing::employees();
    EXPECT_EQ(naive_validate(r, stmt_of(r, "Rank", "Salary")).verdict, Verdict::Valid);
}

TEST(NaiveValidate, NoNullSwapIsNotValid) {
    const Relation r = load_relation(std::string_view("X,Y,Z\n1,2,1\n2,1,1\n3,3,1\n"));
    const auto o = naive_validate(r, {{0}, {1}, Operator::Leq, AttributeSet{0, 1}});
    EXPECT_EQ(o.verdict, Verdict::NotValid);
    EXPECT_EQ(*o.witness, (ViolationPair{0, 1, ViolationKind::Swap}));
}

TEST(NaiveValidate, CapAndDeadline) {
    std::vector<std::string> names;
    std::vector<std::vector<Value>> cols;
    for (int a = 0; a < 27; ++a) {
        names.push_back("a" + std::to_string(a));
        cols.push_back({Value::number(a), Value::number(a + 1)});
    }
    const Relation wide(names, cols);
    const Statement s{{0}, {1}, Operator::Leq, AttributeSet{0, 1}};
    EXPECT_THROW(naive_validate(wide, s), CapExceeded);
    EXPECT_THROW(min_ignored_embedding(wide, s), CapExceeded);

    const Relation r = testing::sample();
    OracleOptions opts;
    opts.deadline = std::chrono::steady_clock::now() - std::chrono::seconds(1);
    EXPECT_THROW(naive_validate(r, stmt_of(r, "A", "B"), opts), Timeout);
    opts.execution = Execution::Parallel;
    EXPECT_THROW(naive_validate(r, stmt_of(r, "A", "B"), opts), Timeout);
    EXPECT_THROW(min_ignored_embedding(r, stmt_of(r, "A", "B"), opts), Timeout);
}

TEST(MinIgnored, SampleIgnoresOne) {
    const Relation r = testing::sample();
    const Statement s = stmt_of(r, "A", "B");
    // 32 supersets, each checked from the definition.
    EXPECT_EQ(brute_min_ignored(r, s), std::optional<std::size_t>(1));
    const auto best = min_ignored_embedding(r, s);
    ASSERT_TRUE(best.has_value());
    EXPECT_EQ(best->ignored, 1u);
    EXPECT_EQ(best->embedding, attrs(r, {"A", "B", "D"}));
}

TEST(MinIgnored, AlreadyValid) {
    const Relation r = testing::employees();
    const Statement s = stmt_of(r, "Rank", "Salary");
    EXPECT_EQ(min_ignored_embedding(r, s), (IgnoredChoice{s.embedding, 0}));
}

TEST(MinIgnored, HardnessOptimumAddsC) {
    const Relation r = hardness_with_nulls();
    const Statement s = stmt_of(r, "X", "Y", Operator::Lt);
    // {} keeps both merges, {D} leaves (s3,s4), {C} ignores s1,s3, {C,D} ignores three.
    EXPECT_EQ(brute_min_ignored(r, s), std::optional<std::size_t>(2));
    const auto best = min_ignored_embedding(r, s);
    ASSERT_TRUE(best.has_value());
    EXPECT_EQ(best->embedding, attrs(r, {"X", "Y", "C"}));
    EXPECT_EQ(best->ignored, 2u);
}

TEST(MinIgnored, NoneWhenUnrepairable) {
    const Relation r = load_relation(std::string_view("X,Y,Z\n1,2,?\n2,1,1\n"));
    const Statement s{{0}, {1}, Operator::Leq, AttributeSet{0, 1}};
    // Tuple 0 is null on Z, so adding Z works here.
    EXPECT_TRUE(min_ignored_embedding(r, s).has_value());
    const Relation full = load_relation(std::string_view("X,Y,Z\n1,2,0\n2,1,1\n"));
    EXPECT_FALSE(min_ignored_embedding(full, s).has_value());
    EXPECT_FALSE(greedy_min_ignored(full, s).has_value());
    EXPECT_FALSE(cover_min_ignored(full, s).has_value());
}

TEST(Greedy, SamplePicksDFirstInSchemaOrder) {
    const Relation r = testing::sample();
    const auto g = greedy_min_ignored(r, stmt_of(r, "A", "B"));
    ASSERT_TRUE(g.has_value());
    EXPECT_EQ(g->ignored, 1u);
    EXPECT_EQ(g->embedding, attrs(r, {"A", "B", "D"}));
}

TEST(Greedy, ValidStatement) {
    const Relation r = testing::employees();
    const Statement s = stmt_of(r, "Rank", "Salary");
    EXPECT_EQ(greedy_min_ignored(r, s), (IgnoredChoice{s.embedding, 0}));
}

TEST(Greedy, HardnessTieBrokenByCoverage) {
    const Relation r = hardness_with_nulls();
    const Statement s = stmt_of(r, "X", "Y", Operator::Lt);
    const MissingIndex idx = build_missing_index(r);
    const auto inst = build_cover_instance(idx, s.embedding, find_errors(r, s, complete_tuples(idx, s.embedding)).merges);
    // C: covers both merges at weight 2; D: covers one at weight 1. Equal ratios.
    ASSERT_EQ(inst.attributes, (std::vector<AttrId>{id(r, "C"), id(r, "D")}));
    EXPECT_EQ(inst.weights, (std::vector<std::size_t>{2, 1}));
    EXPECT_EQ(inst.covers[0].size(), 2u);
    EXPECT_EQ(inst.covers[1].size(), 1u);

    const auto g = greedy_min_ignored(r, s);
    ASSERT_TRUE(g.has_value());
    EXPECT_EQ(g->embedding, attrs(r, {"X", "Y", "C"}));
    EXPECT_EQ(g->ignored, 2u);
    EXPECT_EQ(g->ignored, min_ignored_embedding(r, s)->ignored);
}

TEST(HardnessInstance, Construction) {
    const Relation r = gen_hardness_instance(4);
    ASSERT_EQ(r.num_attributes(), 2u);
    for (TupleId t = 0; t < 4; ++t) {
        EXPECT_EQ(r.value(t, 0), Value::number(static_cast<std::int64_t>(t + 1)));
        EXPECT_EQ(r.value(t, 1), Value::number(static_cast<std::int64_t>((t + 2) / 2)));
    }
    const Relation two = gen_hardness_instance(2);
    const auto e = find_errors(two, stmt_of(two, "X", "Y", Operator::Lt), std::vector<TupleId>{0, 1});
    EXPECT_EQ(e.merges, (std::vector<ViolationPair>{{0, 1, ViolationKind::Merge}}));
}

TEST(HardnessInstance, OnlyFirstMergeCoverable) {
    const Relation r = gen_hardness_instance(6, {{"C", {1}}});
    const Statement s = stmt_of(r, "X", "Y", Operator::Lt);
    const auto all = all_violating_pairs(r, s);
    EXPECT_EQ(all, (std::vector<ViolationPair>{{0, 1, ViolationKind::Merge},
                                               {2, 3, ViolationKind::Merge},
                                               {4, 5, ViolationKind::Merge}}));
    const MissingIndex idx = build_missing_index(r);
    const auto found = find_errors(r, s, complete_tuples(idx, s.embedding));
    EXPECT_EQ(found.merges, all);
    const auto inst = build_cover_instance(idx, s.embedding, found.merges);
    ASSERT_EQ(inst.covers.size(), 1u);
    EXPECT_EQ(inst.covers[0], std::vector<std::size_t>{0});
    EXPECT_EQ(validate_eod(r, s).verdict, Verdict::NotValid);
}

TEST(HardnessInstance, RejectsBadInput) {
    EXPECT_THROW(gen_hardness_instance(3), ConfigError);
    EXPECT_THROW(gen_hardness_instance(0), ConfigError);
    EXPECT_THROW(gen_hardness_instance(4, {{"C", {1}}, {"D", {1}}}), ConfigError);
    EXPECT_THROW(gen_hardness_instance(4, {{"C", {5}}}), ConfigError);
    EXPECT_THROW(gen_hardness_instance(4, {{"X", {1}}}), ConfigError);
}

struct RandomOracleCase : ::testing::Test {
    std::mt19937_64 rng{77};
    testing::InstanceShape small{2, 7, 1, 24, 0.4, 4};
};

TEST_F(RandomOracleCase, SerialAndParallelAgree) {
    for (int iter = 0; iter < 150; ++iter) {
        const auto inst = testing::random_instance(rng, small);
        OracleOptions serial;
        OracleOptions parallel;
        parallel.execution = Execution::Parallel;
        const auto a = naive_validate(inst.relation, inst.statement, serial);
        const auto b = naive_validate(inst.relation, inst.statement, parallel);
        EXPECT_EQ(a.verdict, b.verdict);
        EXPECT_EQ(a.embedding, b.embedding);
        EXPECT_EQ(a.diagnostics.iterations, b.diagnostics.iterations);
        EXPECT_EQ(min_ignored_embedding(inst.relation, inst.statement, serial),
                  min_ignored_embedding(inst.relation, inst.statement, parallel));
    }
}

// Subset search with the detector and subset search with the all-pairs cover
// formulation give the same optimum.
TEST_F(RandomOracleCase, CoverFormulationMatchesSubsetSearch) {
    int checked = 0;
    while (checked < 200) {
        const auto inst = testing::random_instance(rng, small);
        if (inst.relation.num_attributes() - inst.statement.embedding.size() > 5) continue;
        ++checked;
        const auto a = min_ignored_embedding(inst.relation, inst.statement);
        const auto b = cover_min_ignored(inst.relation, inst.statement);
        EXPECT_EQ(a, b);
        const auto brute = brute_min_ignored(inst.relation, inst.statement);
        EXPECT_EQ(a.has_value(), brute.has_value());
        if (a && brute) EXPECT_EQ(a->ignored, *brute);
    }
}

TEST_F(RandomOracleCase, HeuristicsNeverBeatTheOptimum) {
    for (int iter = 0; iter < 200; ++iter) {
        const auto inst = testing::random_instance(rng, small);
        const auto best = min_ignored_embedding(inst.relation, inst.statement);
        const auto v = validate_eod(inst.relation, inst.statement);
        const auto g = greedy_min_ignored(inst.relation, inst.statement);
        EXPECT_EQ(best.has_value(), v.holds());
        EXPECT_EQ(best.has_value(), g.has_value());
        if (!best) continue;
        EXPECT_GE(v.diagnostics.ignored, best->ignored);
        EXPECT_GE(g->ignored, best->ignored);
        EXPECT_TRUE(testing::brute_valid(inst.relation, inst.statement,
                                         testing::brute_complete(inst.relation, g->embedding)));
    }
}

TEST_F(RandomOracleCase, CoverInstanceInvariants) {
    for (int iter = 0; iter < 100; ++iter) {
        const auto inst = testing::random_instance(rng, small);
        const MissingIndex idx = build_missing_index(inst.relation);
        const auto pairs = all_violating_pairs(inst.relation, inst.statement);
        const auto ci = build_cover_instance(idx, inst.statement.embedding, pairs);
        for (std::size_t k = 0; k < ci.attributes.size(); ++k) {
            const AttrId a = ci.attributes[k];
            std::vector<std::size_t> expect;
            for (std::size_t i = 0; i < pairs.size(); ++i) {
                if (idx.is_missing(a, pairs[i].first) || idx.is_missing(a, pairs[i].second)) expect.push_back(i);
            }
            EXPECT_EQ(ci.covers[k], expect);
            if (!expect.empty()) EXPECT_GE(ci.weights[k], 1u);
            EXPECT_EQ(ci.weights[k], ignored_tuples(idx, inst.statement.embedding, inst.statement.embedding.with(a)));
        }
    }
}

}  // namespace
}  // namespace eod
