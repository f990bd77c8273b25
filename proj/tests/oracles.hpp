#pragma once

// Slow, independent reference computations used by the test suites.

#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

#include <gmpxx.h>

namespace oracle {

using Q = mpq_class;
using Z = mpz_class;

/// Rank of a rational matrix by plain Gaussian elimination.
inline std::size_t matrix_rank(std::vector<std::vector<Q>> a) {
    std::size_t rows = a.size(), cols = rows ? a[0].size() : 0, rank = 0;
    for (std::size_t c = 0; c < cols && rank < rows; ++c) {
        std::size_t p = rank;
        while (p < rows && a[p][c] == 0)
            ++p;
        if (p == rows)
            continue;
        std::swap(a[p], a[rank]);
        for (std::size_t i = rank + 1; i < rows; ++i) {
            if (a[i][c] == 0)
                continue;
            Q f = a[i][c] / a[rank][c];
            for (std::size_t j = c; j < cols; ++j)
                a[i][j] -= f * a[rank][j];
        }
        ++rank;
    }
    return rank;
}

/// Terms of s(n+r) = sum c_i s(n+i), coefficients given highest shift first.
inline std::vector<Q> terms(const std::vector<Q>& coeffs, const std::vector<Q>& init, std::size_t n) {
    std::vector<Q> t(init.begin(), init.end());
    std::size_t r = coeffs.size();
    while (t.size() < n) {
        Q next = 0;
        for (std::size_t j = 0; j < r; ++j)
            next += coeffs[j] * t[t.size() - 1 - j];
        t.push_back(next);
    }
    t.resize(n);
    return t;
}

/// Eventual rank of a term list: drop `skip` leading terms (at least the
/// transient), then take the rank of a size x size Hankel section. Correct
/// whenever size exceeds the true rank and enough terms are given.
inline std::size_t hankel_rank(const std::vector<Q>& t, std::size_t skip, std::size_t size) {
    std::vector<std::vector<Q>> h(size, std::vector<Q>(size));
    for (std::size_t i = 0; i < size; ++i)
        for (std::size_t j = 0; j < size; ++j)
            h[i][j] = t.at(skip + i + j);
    return matrix_rank(std::move(h));
}

inline std::size_t power_rank(const std::vector<Q>& coeffs, const std::vector<Q>& init, unsigned M,
                              std::size_t size, std::size_t skip = 0) {
    auto t = terms(coeffs, init, skip + 2 * size);
    for (auto& x : t) {
        Q p = 1;
        for (unsigned e = 0; e < M; ++e)
            p *= x;
        x = p;
    }
    return hankel_rank(t, skip, size);
}

inline Z binom(long n, long k) {
    if (k < 0 || k > n)
        return 0;
    Z out = 1;
    for (long i = 1; i <= k; ++i)
        out = out * (n - k + i) / i;
    return out;
}

/// Every composition of r into k positive parts.
inline std::vector<std::vector<unsigned long>> compositions(unsigned long r, unsigned long k) {
    std::vector<std::vector<unsigned long>> out;
    std::vector<unsigned long> cur;
    auto rec = [&](auto&& self, unsigned long left, unsigned long parts) -> void {
        if (parts == 0) {
            if (left == 0)
                out.push_back(cur);
            return;
        }
        for (unsigned long m = 1; m + (parts - 1) <= left; ++m) {
            cur.push_back(m);
            self(self, left - m, parts - 1);
            cur.pop_back();
        }
    };
    rec(rec, r, k);
    return out;
}

inline Z gcd(const Z& a, const Z& b) {
    Z g;
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return g;
}

/// Determinant by cofactor expansion; fine for the small sizes used in tests.
inline Z det(const std::vector<std::vector<Z>>& a) {
    std::size_t n = a.size();
    if (n == 0)
        return 1;
    if (n == 1)
        return a[0][0];
    Z out = 0;
    for (std::size_t c = 0; c < n; ++c) {
        if (a[0][c] == 0)
            continue;
        std::vector<std::vector<Z>> minor;
        for (std::size_t i = 1; i < n; ++i) {
            std::vector<Z> row;
            for (std::size_t j = 0; j < n; ++j)
                if (j != c)
                    row.push_back(a[i][j]);
            minor.push_back(std::move(row));
        }
        Z d = a[0][c] * det(minor);
        out += (c % 2 ? -d : d);
    }
    return out;
}

/// gcd of all j x j minors.
inline Z minor_gcd(const std::vector<std::vector<Z>>& a, std::size_t j) {
    std::size_t m = a.size(), n = a[0].size();
    Z g = 0;
    std::vector<std::size_t> rows, cols;
    auto pick_cols = [&](auto&& self, std::size_t from) -> void {
        if (cols.size() == j) {
            std::vector<std::vector<Z>> sub;
            for (auto r : rows) {
                std::vector<Z> row;
                for (auto c : cols)
                    row.push_back(a[r][c]);
                sub.push_back(std::move(row));
            }
            g = gcd(g, det(sub));
            return;
        }
        for (std::size_t c = from; c < n; ++c) {
            cols.push_back(c);
            self(self, c + 1);
            cols.pop_back();
        }
    };
    auto pick_rows = [&](auto&& self, std::size_t from) -> void {
        if (rows.size() == j) {
            pick_cols(pick_cols, 0);
            return;
        }
        for (std::size_t r = from; r < m; ++r) {
            rows.push_back(r);
            self(self, r + 1);
            rows.pop_back();
        }
    };
    pick_rows(pick_rows, 0);
    return g;
}

} // namespace oracle
