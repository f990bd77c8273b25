#pragma once

#include <algorithm>
#include <cstddef>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "crseq/bounds.hpp"
#include "crseq/error.hpp"
#include "crseq/rational.hpp"

namespace crseq {

/// Row-major integer matrix.
using IntMatrix = std::vector<std::vector<Integer>>;

inline IntMatrix identity_matrix(std::size_t n) {
    IntMatrix m(n, std::vector<Integer>(n, Integer(0)));
    for (std::size_t i = 0; i < n; ++i)
        m[i][i] = 1;
    return m;
}

inline IntMatrix to_matrix(const std::vector<std::vector<long>>& rows) {
    IntMatrix m;
    for (const auto& r : rows) {
        std::vector<Integer> row;
        for (long v : r)
            row.emplace_back(v);
        m.push_back(std::move(row));
    }
    return m;
}

inline std::size_t columns(const IntMatrix& a) { return a.empty() ? 0 : a.front().size(); }

inline IntMatrix matmul(const IntMatrix& a, const IntMatrix& b) {
    std::size_t n = a.size(), m = columns(b), inner = b.size();
    IntMatrix out(n, std::vector<Integer>(m, Integer(0)));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t l = 0; l < inner; ++l) {
            if (a[i][l] == 0)
                continue;
            for (std::size_t j = 0; j < m; ++j)
                out[i][j] += a[i][l] * b[l][j];
        }
    return out;
}

/// Fraction-free (Bareiss) determinant of a square matrix.
inline Integer determinant(IntMatrix a) {
    std::size_t n = a.size();
    if (n == 0)
        return 1;
    Integer prev = 1;
    int sign = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (a[k][k] == 0) {
            std::size_t s = k + 1;
            while (s < n && a[s][k] == 0)
                ++s;
            if (s == n)
                return 0;
            std::swap(a[k], a[s]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j) {
                a[i][j] = a[i][j] * a[k][k] - a[i][k] * a[k][j];
                mpz_divexact(a[i][j].get_mpz_t(), a[i][j].get_mpz_t(), prev.get_mpz_t());
            }
        prev = a[k][k];
    }
    return sign * a[n - 1][n - 1];
}

struct SmithForm {
    IntMatrix U, D, V;

    std::vector<Integer> diagonal() const {
        std::vector<Integer> out;
        for (std::size_t i = 0; i < std::min(D.size(), columns(D)); ++i)
            out.push_back(D[i][i]);
        return out;
    }
};

/// U * A * V = D with U, V unimodular and d_1 | d_2 | ... >= 0.
///
/// Elementary row and column reduction; the pivot is always the entry of least
/// nonzero absolute value in the remaining block.
inline SmithForm smith_normal_form(const IntMatrix& A) {
    if (A.empty() || columns(A) == 0)
        throw Error(Errc::invalid_argument, "smith_normal_form needs a nonempty matrix");
    std::size_t m = A.size(), n = columns(A);
    for (const auto& row : A)
        if (row.size() != n)
            throw Error(Errc::invalid_argument, "ragged matrix");

    SmithForm f{identity_matrix(m), A, identity_matrix(n)};
    auto& D = f.D;

    auto swap_rows = [&](std::size_t i, std::size_t j) {
        std::swap(D[i], D[j]);
        std::swap(f.U[i], f.U[j]);
    };
    auto swap_cols = [&](std::size_t i, std::size_t j) {
        for (auto& row : D)
            std::swap(row[i], row[j]);
        for (auto& row : f.V)
            std::swap(row[i], row[j]);
    };
    // row i -= q * row j
    auto row_sub = [&](std::size_t i, std::size_t j, const Integer& q) {
        for (std::size_t c = 0; c < n; ++c)
            D[i][c] -= q * D[j][c];
        for (std::size_t c = 0; c < m; ++c)
            f.U[i][c] -= q * f.U[j][c];
    };
    // col i -= q * col j
    auto col_sub = [&](std::size_t i, std::size_t j, const Integer& q) {
        for (std::size_t r = 0; r < m; ++r)
            D[r][i] -= q * D[r][j];
        for (std::size_t r = 0; r < n; ++r)
            f.V[r][i] -= q * f.V[r][j];
    };

    for (std::size_t t = 0; t < std::min(m, n); ++t) {
        while (true) {
            // Move the smallest nonzero entry of the block to (t, t).
            std::size_t bi = m, bj = n;
            for (std::size_t i = t; i < m; ++i)
                for (std::size_t j = t; j < n; ++j)
                    if (D[i][j] != 0 && (bi == m || abs(D[i][j]) < abs(D[bi][bj]))) {
                        bi = i;
                        bj = j;
                    }
            if (bi == m)
                break;
            swap_rows(t, bi);
            swap_cols(t, bj);

            bool clean = true;
            for (std::size_t i = t + 1; i < m; ++i)
                if (D[i][t] != 0) {
                    Integer q = D[i][t] / D[t][t];
                    row_sub(i, t, q);
                    clean = clean && D[i][t] == 0;
                }
            for (std::size_t j = t + 1; j < n; ++j)
                if (D[t][j] != 0) {
                    Integer q = D[t][j] / D[t][t];
                    col_sub(j, t, q);
                    clean = clean && D[t][j] == 0;
                }
            if (!clean)
                continue;

            // Divisibility: fold an offending row into the pivot row and retry.
            bool divides = true;
            for (std::size_t i = t + 1; i < m && divides; ++i)
                for (std::size_t j = t + 1; j < n; ++j)
                    if (D[i][j] % D[t][t] != 0) {
                        row_sub(t, i, Integer(-1));
                        divides = false;
                        break;
                    }
            if (divides)
                break;
        }
        if (D[t][t] < 0) {
            for (auto& x : D[t])
                x = -x;
            for (auto& x : f.U[t])
                x = -x;
        }
    }
    return f;
}

/// Row-style Hermite normal form: nonzero rows in echelon order with positive
/// pivots and entries above each pivot reduced into [0, pivot). Zero rows are
/// dropped, so the result is a basis of the row lattice.
inline IntMatrix hermite_normal_form(IntMatrix a) {
    std::size_t n = columns(a);
    std::size_t top = 0;
    std::vector<std::size_t> pivots;
    for (std::size_t c = 0; c < n && top < a.size(); ++c) {
        while (true) {
            std::size_t best = a.size();
            for (std::size_t i = top; i < a.size(); ++i)
                if (a[i][c] != 0 && (best == a.size() || abs(a[i][c]) < abs(a[best][c])))
                    best = i;
            if (best == a.size())
                break;
            std::swap(a[top], a[best]);
            bool done = true;
            for (std::size_t i = top + 1; i < a.size(); ++i) {
                if (a[i][c] == 0)
                    continue;
                Integer q = a[i][c] / a[top][c];
                for (std::size_t j = c; j < n; ++j)
                    a[i][j] -= q * a[top][j];
                done = done && a[i][c] == 0;
            }
            if (done)
                break;
        }
        if (a[top][c] == 0)
            continue;
        if (a[top][c] < 0)
            for (auto& x : a[top])
                x = -x;
        for (std::size_t i = 0; i < top; ++i) {
            Integer q;
            mpz_fdiv_q(q.get_mpz_t(), a[i][c].get_mpz_t(), a[top][c].get_mpz_t());
            if (q != 0)
                for (std::size_t j = c; j < n; ++j)
                    a[i][j] -= q * a[top][j];
        }
        pivots.push_back(c);
        ++top;
    }
    a.resize(top);
    return a;
}

/// Basis of {x in Z^n : A x = 0}, in Hermite normal form.
inline IntMatrix integer_kernel(const IntMatrix& A, std::size_t n) {
    // Row-reduce [A^T | I]; rows whose A^T part vanishes span the kernel.
    std::size_t m = A.size();
    IntMatrix aug(n, std::vector<Integer>(m + n, Integer(0)));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < m; ++j)
            aug[i][j] = A[j][i];
        aug[i][m + i] = 1;
    }
    auto h = hermite_normal_form(std::move(aug));
    IntMatrix kernel;
    for (const auto& row : h) {
        if (std::all_of(row.begin(), row.begin() + static_cast<long>(m), [](const Integer& x) { return x == 0; }))
            kernel.emplace_back(row.begin() + static_cast<long>(m), row.end());
    }
    return hermite_normal_form(std::move(kernel));
}

/// Multiplicative relations among k symbolic roots, as integer vectors whose
/// coordinates sum to zero.
class RelationLattice {
public:
    RelationLattice(std::size_t k, IntMatrix relations) : k_(k), rel_(std::move(relations)) {
        if (k_ == 0)
            throw Error(Errc::invalid_argument, "k must be >= 1");
        for (std::size_t i = 0; i < rel_.size(); ++i) {
            if (rel_[i].size() != k_)
                throw Error(Errc::invalid_relation, "relation " + std::to_string(i + 1) + " has " +
                                                        std::to_string(rel_[i].size()) + " entries, expected " +
                                                        std::to_string(k_));
            Integer sum = 0;
            for (const auto& x : rel_[i])
                sum += x;
            if (sum != 0)
                throw Error(Errc::invalid_relation,
                            "relation " + std::to_string(i + 1) + " has coordinate sum " + sum.get_str());
        }
        basis_ = hermite_normal_form(rel_);
    }

    std::size_t k() const noexcept { return k_; }
    const IntMatrix& relations() const noexcept { return rel_; }
    /// Hermite basis of the relation lattice.
    const IntMatrix& basis() const noexcept { return basis_; }

    /// Canonical representative of v modulo the lattice.
    std::vector<Integer> reduce(std::vector<Integer> v) const {
        for (const auto& h : basis_) {
            std::size_t p = 0;
            while (h[p] == 0)
                ++p;
            Integer q;
            mpz_fdiv_q(q.get_mpz_t(), v[p].get_mpz_t(), h[p].get_mpz_t());
            if (q != 0)
                for (std::size_t j = p; j < k_; ++j)
                    v[j] -= q * h[j];
        }
        return v;
    }

private:
    std::size_t k_;
    IntMatrix rel_;
    IntMatrix basis_;
};

struct QuotientStructure {
    std::vector<Integer> torsion; // invariant factors > 1, each dividing the next
    std::size_t free_rank = 0;

    std::string to_string() const {
        std::string out;
        for (const auto& t : torsion)
            out += (out.empty() ? "" : " + ") + std::string("Z_") + t.get_str();
        if (free_rank) {
            out += out.empty() ? "" : " + ";
            out += free_rank == 1 ? "Z" : "Z^" + std::to_string(free_rank);
        }
        return out.empty() ? "0" : out;
    }
};

/// Z^k / N as torsion plus free part.
inline QuotientStructure quotient_invariants(const RelationLattice& L) {
    QuotientStructure q;
    q.free_rank = L.k();
    if (L.relations().empty())
        return q;
    auto snf = smith_normal_form(L.relations());
    for (const auto& d : snf.diagonal()) {
        if (d == 0)
            continue;
        --q.free_rank;
        if (d > 1)
            q.torsion.push_back(d);
    }
    return q;
}

/// Expected eventual degree of the class count in M: one less than the free rank.
inline long predicted_degree(const RelationLattice& L) {
    return static_cast<long>(quotient_invariants(L).free_rank) - 1;
}

/// Number of classes modulo N among nonnegative vectors of Z^k with coordinate
/// sum M. With multiplicity-free roots this is the expected distinct-root count
/// of the M-th power; root multiplicities are not modelled.
inline Integer count_degree_M_classes(const RelationLattice& L, unsigned long M,
                                      unsigned long limit = 1'000'000) {
    if (M < 1)
        throw Error(Errc::invalid_argument, "M must be >= 1");
    std::size_t k = L.k();
    Integer total = power_bound_distinct(k, M);
    if (total > limit)
        throw Error(Errc::too_large, std::to_string(M) + "-element multisets of " + std::to_string(k) +
                                         " roots: " + total.get_str() + " exceeds " + std::to_string(limit));
    if (L.basis().empty())
        return total;

    std::set<std::vector<Integer>> classes;
    std::vector<Integer> v(k, Integer(0));
    // Enumerate compositions of M into k nonnegative parts.
    std::vector<unsigned long> c(k, 0);
    c[k - 1] = M;
    while (true) {
        for (std::size_t i = 0; i < k; ++i)
            v[i] = c[i];
        classes.insert(L.reduce(v));
        // next composition: move one unit leftward from the last nonzero slot
        std::size_t j = k - 1;
        while (j > 0 && c[j] == 0)
            --j;
        if (j == 0)
            break;
        unsigned long tail = c[j];
        c[j] = 0;
        ++c[j - 1];
        c[k - 1] = tail - 1;
    }
    return Integer(static_cast<unsigned long>(classes.size()));
}

namespace detail {

/// Pairwise coprime integers > 1 such that every input is a product of powers of them.
inline std::vector<Integer> coprime_base(std::vector<Integer> xs) {
    std::erase_if(xs, [](const Integer& x) { return x <= 1; });
    bool changed = true;
    while (changed) {
        changed = false;
        std::sort(xs.begin(), xs.end());
        xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
        for (std::size_t i = 0; i < xs.size() && !changed; ++i)
            for (std::size_t j = i + 1; j < xs.size() && !changed; ++j) {
                Integer g = gcd(xs[i], xs[j]);
                if (g == 1)
                    continue;
                Integer a = xs[i] / g, b = xs[j] / g;
                xs.erase(xs.begin() + static_cast<long>(j));
                xs.erase(xs.begin() + static_cast<long>(i));
                for (Integer* y : {&g, &a, &b})
                    if (*y > 1)
                        xs.push_back(*y);
                changed = true;
            }
    }
    return xs;
}

inline long valuation(Integer n, const Integer& b) {
    long e = 0;
    while (n % b == 0) {
        n /= b;
        ++e;
    }
    return e;
}

} // namespace detail

/// All sum-zero relations among nonzero rational roots.
///
/// Numerators and denominators are split over a coprime base instead of being
/// factored; the sign of each root is an extra coordinate of order 2.
inline RelationLattice relations_from_rational_roots(const std::vector<Rational>& roots) {
    if (roots.empty())
        throw Error(Errc::invalid_argument, "need at least one root");
    for (std::size_t i = 0; i < roots.size(); ++i)
        if (roots[i] == 0)
            throw Error(Errc::zero_root, "root " + std::to_string(i + 1) + " is zero");

    std::size_t k = roots.size();
    std::vector<Integer> parts;
    for (const auto& q : roots) {
        parts.push_back(abs(q.get_num()));
        parts.push_back(q.get_den());
    }
    auto base = detail::coprime_base(parts);

    // Unknowns (e_1..e_k, y). Rows: one per base element, sign parity, coordinate sum.
    IntMatrix C;
    for (const auto& b : base) {
        std::vector<Integer> row(k + 1, Integer(0));
        for (std::size_t i = 0; i < k; ++i)
            row[i] = detail::valuation(abs(roots[i].get_num()), b) - detail::valuation(roots[i].get_den(), b);
        C.push_back(std::move(row));
    }
    std::vector<Integer> sign(k + 1, Integer(0)), sum(k + 1, Integer(0));
    for (std::size_t i = 0; i < k; ++i) {
        sign[i] = roots[i] < 0 ? 1 : 0;
        sum[i] = 1;
    }
    sign[k] = -2;
    C.push_back(std::move(sign));
    C.push_back(std::move(sum));

    IntMatrix rel;
    for (auto& row : integer_kernel(C, k + 1)) {
        row.pop_back();
        rel.push_back(std::move(row));
    }
    return RelationLattice(k, hermite_normal_form(std::move(rel)));
}

} // namespace crseq
