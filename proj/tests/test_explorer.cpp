#include <random>

#include <gtest/gtest.h>

#include "crseq/explorer.hpp"
#include "oracles.hpp"

using namespace crseq;

namespace {

std::vector<Rational> q(std::initializer_list<long> xs) { return {xs.begin(), xs.end()}; }

LinRecSequence seq(std::initializer_list<long> c, std::initializer_list<long> init) {
    return LinRecSequence(Recurrence(q(c)), q(init));
}

RankSequence rs(std::initializer_list<std::size_t> xs) { return xs; }

} // namespace

TEST(RankSequence, Examples) {
    EXPECT_EQ(rank_sequence(seq({5, -9, 7, -2}, {1, 1, 2, 1}), 5).ranks, rs({4, 9, 16, 25, 36}));
    EXPECT_EQ(rank_sequence(seq({0, -1}, {1, 1}), 5).ranks, rs({2, 1, 2, 1, 2}));
    EXPECT_EQ(rank_sequence(seq({2, -1, 2}, {2, 3, 3}), 5).ranks, rs({3, 4, 6, 7, 9}));
    EXPECT_EQ(rank_sequence(seq({1, 1}, {0, 1}), 5).ranks, rs({2, 3, 4, 5, 6}));
}

TEST(RankSequence, FibonacciIsMPlusOne) {
    auto p = rank_sequence(seq({1, 1}, {0, 1}), 8);
    for (std::size_t M = 1; M <= 8; ++M)
        EXPECT_EQ(p.ranks[M - 1], M + 1);
    ASSERT_TRUE(p.fitted);
    EXPECT_EQ(p.fitted->to_string(), "M + 1");
}

TEST(RankSequence, ProfileInvariants) {
    auto p = rank_sequence(seq({2, -1, 2}, {2, 3, 3}), 6);
    ASSERT_EQ(p.ranks.size(), 6u);
    ASSERT_EQ(p.bounds.size(), 6u);
    ASSERT_EQ(p.transients.size(), 6u);
    for (std::size_t i = 0; i < 6; ++i)
        EXPECT_LE(Integer(p.ranks[i]), p.bounds[i]);
    EXPECT_THROW(rank_sequence(seq({1}, {1}), 0), Error);
}

TEST(Generic, Examples) {
    EXPECT_EQ(generic_rank_sequence(Recurrence(q({0, -1})), 4), rs({2, 2, 2, 2}));
    EXPECT_EQ(generic_rank_sequence(Recurrence(q({2, -1, 2})), 5), rs({3, 5, 7, 9, 11}));
    EXPECT_EQ(generic_rank_sequence(Recurrence(q({1, 1})), 4), rs({2, 3, 4, 5}));
    GenericOptions g;
    g.trials = 0;
    EXPECT_THROW(generic_rank_sequence(Recurrence(q({1, 1})), 4, g), Error);
}

TEST(Generic, DeterministicForSeed) {
    GenericOptions g;
    g.seed = 12345;
    auto rec = Recurrence(q({1, 0, 0, 1, -1}));
    EXPECT_EQ(generic_rank_sequence(rec, 4, g), generic_rank_sequence(rec, 4, g));
}

TEST(Classify, Examples) {
    auto p51 = rank_sequence(seq({0, -1}, {1, 1}), 5);
    EXPECT_EQ(classify(p51, generic_rank_sequence(Recurrence(q({0, -1})), 5)), Classification::particular);
    auto p52 = rank_sequence(seq({2, -1, 2}, {2, 3, 3}), 5);
    EXPECT_EQ(classify(p52, rs({3, 5, 7, 9, 11})), Classification::particular);
    auto p43 = rank_sequence(seq({5, -9, 7, -2}, {1, 1, 2, 1}), 5);
    EXPECT_EQ(classify(p43, generic_rank_sequence(Recurrence(q({5, -9, 7, -2})), 5)), Classification::general);
    EXPECT_EQ(classify(p43, p43.ranks), Classification::general);
    EXPECT_EQ(classify(rs({3, 6}), rs({3, 5})), Classification::unknown);
    try {
        classify(rs({1, 2}), rs({1}));
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), Errc::length_mismatch);
    }
}

TEST(Fit, Examples) {
    auto a = fit_quasi_polynomial(rs({4, 9, 16, 25, 36, 49, 64, 81}));
    ASSERT_TRUE(a);
    EXPECT_EQ(a->period, 1u);
    EXPECT_EQ(a->components[0], RationalPolynomial({1, 2, 1}));
    auto b = fit_quasi_polynomial(rs({5, 15, 35, 67, 111, 167, 235, 315}));
    ASSERT_TRUE(b);
    EXPECT_EQ(b->components[0], RationalPolynomial({11, -10, 6}));
    EXPECT_EQ(b->onset, 2u);
    auto c = fit_quasi_polynomial(rs({2, 1, 2, 1, 2, 1, 2, 1}));
    ASSERT_TRUE(c);
    EXPECT_EQ(c->period, 2u);
    EXPECT_EQ(c->components[0], RationalPolynomial::constant(2));
    EXPECT_EQ(c->components[1], RationalPolynomial::constant(1));
    EXPECT_EQ(c->to_string(), "[2 | 1] mod 2");
    EXPECT_FALSE(fit_quasi_polynomial(rs({1, 2, 4, 8, 16, 32, 64, 128})));
    EXPECT_FALSE(fit_quasi_polynomial(rs({1, 2})));
}

TEST(Fit, ReproducesEveryObservedValueFromOnset) {
    std::mt19937_64 rng(17);
    std::uniform_int_distribution<int> coef(0, 6), deg(0, 3), period(1, 3), noise(0, 4), len(8, 16);
    for (int t = 0; t < 300; ++t) {
        int p = period(rng);
        std::vector<RationalPolynomial> comps;
        for (int c = 0; c < p; ++c) {
            std::vector<Rational> co(deg(rng) + 1);
            for (auto& x : co)
                x = coef(rng);
            co[0] = 200; // keeps values positive
            comps.emplace_back(std::move(co));
        }
        RankSequence ranks;
        std::size_t n = len(rng);
        for (std::size_t M = 1; M <= n; ++M) {
            Rational v = comps[(M - 1) % p](Rational(static_cast<unsigned long>(M)));
            ranks.push_back(v.get_num().get_ui());
        }
        ranks[0] += noise(rng); // a short transient
        auto fit = fit_quasi_polynomial(ranks);
        if (!fit)
            continue;
        for (std::size_t M = fit->onset; M <= ranks.size(); ++M)
            EXPECT_EQ((*fit)(M), Rational(static_cast<unsigned long>(ranks[M - 1])));
        EXPECT_LE(fit->period, static_cast<std::size_t>(p));
    }
}

TEST(Search, RankOne) {
    SearchConfig cfg;
    cfg.rank = 1;
    cfg.mmax = 6;
    auto res = search(cfg);
    ASSERT_EQ(res.rows.size(), 1u);
    EXPECT_EQ(res.rows[0].ranks, RankSequence(6, 1));
    EXPECT_EQ(res.tuples, 6u);
}

TEST(Search, RankTwoBox) {
    SearchConfig cfg;
    cfg.rank = 2;
    cfg.mmax = 8;
    auto res = search(cfg);
    std::vector<RankSequence> expected{
        {2, 2, 2, 2, 2, 2, 2, 2}, {2, 3, 3, 3, 3, 3, 3, 3}, {2, 3, 4, 4, 4, 4, 4, 4},
        {2, 3, 4, 5, 6, 6, 6, 6}, {2, 3, 4, 5, 6, 7, 8, 9}};
    ASSERT_EQ(res.rows.size(), expected.size());
    for (std::size_t i = 0; i < expected.size(); ++i)
        EXPECT_EQ(res.rows[i].ranks, expected[i]);
    EXPECT_TRUE(res.rows.back().attains_bound);
    EXPECT_EQ(res.rows.back().fit->to_string(), "M + 1");
    std::size_t total = 0;
    for (const auto& r : res.rows) {
        total += r.tuple_count;
        for (std::size_t M = 1; M <= 8; ++M)
            EXPECT_LE(Integer(r.ranks[M - 1]), power_bound_distinct(2, M));
    }
    EXPECT_EQ(total, res.tuples);
}

TEST(Search, IndependentOfThreadCount) {
    SearchConfig cfg;
    cfg.rank = 2;
    cfg.mmax = 6;
    cfg.particular_probes = 2;
    cfg.seed = 9;
    cfg.threads = 1;
    auto a = search(cfg);
    cfg.threads = 4;
    std::size_t calls = 0;
    cfg.progress = [&](std::size_t, std::size_t) { ++calls; };
    auto b = search(cfg);
    EXPECT_EQ(calls, b.tuples);
    ASSERT_EQ(a.rows.size(), b.rows.size());
    for (std::size_t i = 0; i < a.rows.size(); ++i) {
        EXPECT_EQ(a.rows[i].coeffs, b.rows[i].coeffs);
        EXPECT_EQ(a.rows[i].ranks, b.rows[i].ranks);
        EXPECT_EQ(a.rows[i].classification, b.rows[i].classification);
        EXPECT_EQ(a.rows[i].tuple_count, b.rows[i].tuple_count);
    }
}

TEST(Search, FindsParticularRows) {
    SearchConfig cfg;
    cfg.rank = 2;
    cfg.mmax = 5;
    cfg.coeff_lo = -1;
    cfg.coeff_hi = 1;
    cfg.particular_probes = 6;
    auto res = search(cfg);
    bool found = false;
    for (const auto& r : res.rows)
        found = found || (r.classification == Classification::particular && r.ranks == rs({2, 1, 2, 1, 2}));
    EXPECT_TRUE(found);
}

TEST(Search, BudgetExceeded) {
    SearchConfig cfg;
    cfg.rank = 3;
    cfg.budget = 100;
    try {
        search(cfg);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), Errc::budget_exceeded);
    }
}

TEST(Search, ExtraTuplesAndFilter) {
    SearchConfig cfg;
    cfg.rank = 1;
    cfg.coeff_lo = 1;
    cfg.coeff_hi = 1;
    cfg.mmax = 3;
    cfg.extra_tuples = {{5}};
    EXPECT_EQ(search(cfg).tuples, 2u);
    cfg.accept = [](std::span<const long> t) { return t[0] > 2; };
    EXPECT_EQ(search(cfg).tuples, 1u);
    cfg.extra_tuples = {{0}};
    EXPECT_THROW(search(cfg), Error);
}

TEST(Search, EnumerateTuples) {
    auto t = enumerate_tuples(2, -1, 1);
    EXPECT_EQ(t.size(), 6u);
    EXPECT_EQ(t.front(), (std::vector<long>{-1, -1}));
    EXPECT_EQ(t.back(), (std::vector<long>{1, 1}));
    EXPECT_TRUE(std::is_sorted(t.begin(), t.end()));
    for (const auto& x : t)
        EXPECT_NE(x.back(), 0);
}
