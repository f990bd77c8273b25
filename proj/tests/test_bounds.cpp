#include <random>

#include <gtest/gtest.h>

#include "crseq/bounds.hpp"
#include "crseq/rank.hpp"
#include "oracles.hpp"

using namespace crseq;

TEST(Bounds, ProductMultiplicity) {
    EXPECT_EQ(product_multiplicity(1, 1), 1u);
    EXPECT_EQ(product_multiplicity(2, 2), 3u);
    for (unsigned long m = 1; m < 8; ++m)
        EXPECT_EQ(product_multiplicity(1, m), m);
    std::vector<unsigned long> ms{2, 2, 1};
    EXPECT_EQ(product_multiplicity_general(ms), 3u);
    std::vector<unsigned long> ones(6, 1);
    EXPECT_EQ(product_multiplicity_general(ones), 1u);
    std::vector<unsigned long> single{5};
    EXPECT_EQ(product_multiplicity_general(single), 5u);
    EXPECT_THROW(product_multiplicity(0, 2), Error);
}

TEST(Bounds, ProductRankBound) {
    EXPECT_EQ(product_rank_bound(4, 2, 3, 2), 10);
    EXPECT_EQ(product_rank_bound(3, 1, 3, 1), 5);
    for (unsigned long r = 1; r <= 6; ++r)
        for (unsigned long s = 1; s <= 6; ++s)
            EXPECT_EQ(product_rank_bound(r, r, s, s), r * s);
    try {
        product_rank_bound(2, 3, 2, 2);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), Errc::k_greater_than_r);
    }
}

TEST(Bounds, PowerBoundDistinct) {
    for (unsigned long M = 1; M <= 5; ++M)
        EXPECT_EQ(power_bound_distinct(2, M), M + 1);
    std::vector<long> three{3, 6, 10, 15};
    for (unsigned long M = 1; M <= 4; ++M)
        EXPECT_EQ(power_bound_distinct(3, M), three[M - 1]);
    for (unsigned long M = 1; M <= 10; ++M)
        EXPECT_EQ(power_bound_distinct(1, M), 1);
}

TEST(Bounds, PowerBoundRefined) {
    std::vector<long> sq{4, 9, 16, 25, 36};
    for (unsigned long M = 1; M <= 5; ++M) {
        EXPECT_EQ(power_bound_refined(4, 2, M), sq[M - 1]);
        EXPECT_EQ(power_bound_refined(2, 2, M), M + 1);
    }
    EXPECT_EQ(power_bound_refined(5, 3, 2), 14);
    try {
        power_bound_refined(2, 3, 1);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), Errc::k_greater_than_r);
    }
}

TEST(Bounds, OracleExamples) {
    EXPECT_EQ(bound_oracle(RootSpec{{3, 1}}, 3), 16);
    for (unsigned long r = 1; r <= 5; ++r)
        for (unsigned long M = 1; M <= 5; ++M) {
            EXPECT_EQ(bound_oracle(RootSpec{std::vector<unsigned long>(r, 1)}, M), oracle::binom(M + r - 1, M));
            EXPECT_EQ(bound_oracle(RootSpec{{r}}, M), r * M - M + 1);
        }
    try {
        bound_oracle(RootSpec{std::vector<unsigned long>(30, 1)}, 12);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), Errc::too_large);
    }
}

TEST(Bounds, OracleEqualsRefinedOverAllCompositions) {
    for (unsigned long r = 1; r <= 7; ++r)
        for (unsigned long k = 1; k <= r; ++k)
            for (const auto& ms : oracle::compositions(r, k))
                for (unsigned long M = 1; M <= 6; ++M)
                    ASSERT_EQ(bound_oracle(RootSpec{ms}, M), power_bound_refined(r, k, M))
                        << "r=" << r << " k=" << k << " M=" << M;
}

TEST(Bounds, RefinedDominatedByDistinct) {
    for (unsigned long r = 1; r <= 7; ++r)
        for (unsigned long k = 1; k <= r; ++k)
            for (unsigned long M = 1; M <= 6; ++M) {
                auto a = power_bound_refined(r, k, M), b = power_bound_distinct(r, M);
                EXPECT_LE(a, b);
                // a single double root still splits its exponent e into e+1 slots,
                // so equality holds for k = r - 1 as well
                if (M >= 2)
                    EXPECT_EQ(a == b, k + 1 >= r) << "r=" << r << " k=" << k << " M=" << M;
            }
}

TEST(Bounds, HockeyStick) {
    for (long k = 0; k <= 8; ++k)
        for (long M = 0; M <= 12; ++M) {
            Integer sum = 0;
            for (long j = 0; j <= M; ++j)
                sum += binomial(k + j, j);
            EXPECT_EQ(sum, binomial(k + M + 1, M));
        }
}

TEST(Bounds, EmpiricalSoundness) {
    std::mt19937_64 rng(3);
    std::uniform_int_distribution<int> root(-3, 3), mult(1, 2), nroots(1, 3), val(-5, 5);
    for (int i = 0; i < 60; ++i) {
        RationalPolynomial p = RationalPolynomial::constant(1);
        int n = nroots(rng);
        for (int j = 0; j < n; ++j) {
            int x = root(rng);
            if (x == 0)
                x = 1;
            for (int m = mult(rng); m > 0; --m)
                p = p * RationalPolynomial::linear_root(Rational(x));
        }
        auto rec = recurrence_from_char_poly(p);
        std::vector<Rational> init(rec.order());
        for (auto& v : init)
            v = val(rng);
        LinRecSequence s(rec, init);
        std::size_t r = rec.order(), k = distinct_roots(rec);
        for (unsigned M = 1; M <= 4; ++M)
            EXPECT_LE(Integer(rank_of_power(s, M).rank), power_bound_refined(r, k, M));
    }
}
