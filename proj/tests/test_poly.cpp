#include <random>

#include <gtest/gtest.h>

#include "crseq/polynomial.hpp"
#include "oracles.hpp"

using namespace crseq;
using P = RationalPolynomial;

namespace {

P from_roots(std::initializer_list<long> roots) {
    P out = P::constant(1);
    for (long r : roots)
        out = out * P::linear_root(Rational(r));
    return out;
}

P random_poly(std::mt19937_64& rng, int max_deg = 6) {
    std::uniform_int_distribution<int> deg(0, max_deg), coef(-9, 9);
    std::vector<Rational> c(deg(rng) + 1);
    for (auto& x : c)
        x = coef(rng);
    return P(std::move(c));
}

} // namespace

TEST(Rational, ParseAndPrint) {
    EXPECT_EQ(parse_rational("6/4"), Rational(3, 2));
    EXPECT_EQ(parse_rational(" -7 "), Rational(-7));
    EXPECT_EQ(parse_rational("3/-6"), Rational(-1, 2));
    EXPECT_EQ(to_string(parse_rational("10/5")), "2");
    EXPECT_EQ(to_string(Rational(-1, 3)), "-1/3");
    EXPECT_THROW(parse_rational("1/0"), Error);
    EXPECT_THROW(parse_rational("abc"), Error);
    auto xs = parse_rational_list("5,-9,7,-2");
    ASSERT_EQ(xs.size(), 4u);
    EXPECT_EQ(xs[1], -9);
    EXPECT_TRUE(parse_rational_list("").empty());
}

TEST(Poly, MulExamples) {
    EXPECT_EQ(from_roots({1, -1}), P({-1, 0, 1}));
    P big = from_roots({2, 2, 2, 3, 3, -2, -2, -2, -3, -3});
    EXPECT_EQ(big, P({-5184, 0, 5040, 0, -1900, 0, 345, 0, -30, 0, 1}));
    EXPECT_TRUE((P() * big).is_zero());
    EXPECT_EQ(poly_mul(P({1, 1}), P({1, 1})).degree(), 2);
}

TEST(Poly, GcdExamples) {
    EXPECT_EQ(poly_gcd(P({-1, 0, 1}), P({-1, 1})), P({-1, 1}));
    EXPECT_EQ(poly_gcd(P({1, 0, 1}), P({-2, 1})), P::constant(1));
    P a = from_roots({1, 1, 1, 2});
    P b = Rational(3) * from_roots({1, 1});
    EXPECT_EQ(poly_gcd(a, b), from_roots({1, 1}));
    EXPECT_EQ(poly_gcd(P(), P({0, 2})), P({0, 1}));
    try {
        poly_gcd(P(), P());
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), Errc::both_zero);
    }
}

TEST(Poly, SquarefreeExamples) {
    EXPECT_EQ(squarefree_part(from_roots({1, 1, 1, 2})), from_roots({1, 2}));
    EXPECT_EQ(distinct_root_count(from_roots({1, 1, 1, 2})), 2u);
    EXPECT_EQ(squarefree_part(P({-2, 1})), P({-2, 1}));
    EXPECT_EQ(distinct_root_count(P({1, 0, 1})), 2u);
    EXPECT_THROW(squarefree_part(P()), Error);
}

TEST(Poly, Binomial) {
    EXPECT_EQ(binomial(4, 2), 6);
    EXPECT_EQ(binomial(7, -1), 0);
    EXPECT_EQ(binomial(3, 5), 0);
    for (long M = 1; M <= 4; ++M)
        EXPECT_EQ(binomial(M + 2, M), (std::vector<long>{3, 6, 10, 15}[M - 1]));
    for (long n = 0; n <= 30; ++n)
        for (long k = 0; k + 1 <= n; ++k)
            EXPECT_EQ(binomial(n, k) + binomial(n, k + 1), binomial(n + 1, k + 1));
    for (long n = 0; n <= 20; ++n)
        for (long k = -1; k <= n + 1; ++k)
            EXPECT_EQ(binomial(n, k), oracle::binom(n, k));
}

TEST(Poly, ToString) {
    EXPECT_EQ(P().to_string(), "0");
    EXPECT_EQ(P({11, -10, 6}).to_string("M"), "6M^2 - 10M + 11");
    EXPECT_EQ(P({1, Rational(13, 6), Rational(3, 2), Rational(1, 3)}).to_string("M"), "M^3/3 + 3M^2/2 + 13M/6 + 1");
    EXPECT_EQ(P({0, -1}).to_string(), "-x");
}

TEST(Poly, RingProperties) {
    std::mt19937_64 rng(7);
    for (int i = 0; i < 200; ++i) {
        P a = random_poly(rng), b = random_poly(rng), c = random_poly(rng);
        EXPECT_EQ(a * b, b * a);
        EXPECT_EQ((a * b) * c, a * (b * c));
        if (!a.is_zero() && !b.is_zero())
            EXPECT_EQ((a * b).degree(), a.degree() + b.degree());
        if (c.is_zero() || (a.is_zero() && b.is_zero()))
            continue;
        P mc = c.monic();
        EXPECT_EQ(poly_gcd(a * mc, b * mc), mc * poly_gcd(a, b));
    }
}

TEST(Poly, DivmodReconstructs) {
    std::mt19937_64 rng(11);
    for (int i = 0; i < 200; ++i) {
        P a = random_poly(rng, 8), b = random_poly(rng, 4);
        if (b.is_zero())
            continue;
        auto [q, r] = divmod(a, b);
        EXPECT_EQ(q * b + r, a);
        EXPECT_LT(r.degree(), b.degree());
    }
}

TEST(Poly, SquarefreeProperties) {
    std::mt19937_64 rng(13);
    std::uniform_int_distribution<long> root(-4, 4);
    std::uniform_int_distribution<int> count(1, 6);
    for (int i = 0; i < 200; ++i) {
        std::vector<long> roots(count(rng));
        for (auto& r : roots)
            r = root(rng);
        P p = P::constant(1);
        for (long r : roots)
            p = p * P::linear_root(Rational(r));
        P s = squarefree_part(p);
        EXPECT_TRUE(divmod(p, s).second.is_zero());
        EXPECT_EQ(squarefree_part(s), s);
        std::sort(roots.begin(), roots.end());
        auto distinct = static_cast<std::size_t>(std::unique(roots.begin(), roots.end()) - roots.begin());
        EXPECT_EQ(distinct_root_count(p), distinct);
    }
}
