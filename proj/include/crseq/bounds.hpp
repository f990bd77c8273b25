#pragma once

#include <cstddef>
#include <numeric>
#include <span>
#include <vector>

#include "crseq/error.hpp"
#include "crseq/polynomial.hpp"
#include "crseq/rational.hpp"

namespace crseq {

/// Shape of a characteristic polynomial: one multiplicity per distinct root.
struct RootSpec {
    std::vector<unsigned long> multiplicities;

    std::size_t k() const noexcept { return multiplicities.size(); }
    unsigned long r() const noexcept {
        return std::accumulate(multiplicities.begin(), multiplicities.end(), 0ul);
    }
};

/// Multiplicity of rho1*rho2 in the product sequence when no other pair of
/// roots shares that product.
inline unsigned long product_multiplicity(unsigned long m1, unsigned long m2) {
    if (m1 < 1 || m2 < 1)
        throw Error(Errc::invalid_argument, "multiplicities must be >= 1");
    return m1 + m2 - 1;
}

/// 1 - l + sum(ms) for a product of l roots.
inline unsigned long product_multiplicity_general(std::span<const unsigned long> ms) {
    if (ms.empty())
        throw Error(Errc::invalid_argument, "need at least one multiplicity");
    unsigned long sum = 0;
    for (auto m : ms) {
        if (m < 1)
            throw Error(Errc::invalid_argument, "multiplicities must be >= 1");
        sum += m;
    }
    return sum + 1 - ms.size();
}

/// r1*r2 - (r1-k1)(r2-k2): the worst case for a product of a rank-r1 sequence
/// with k1 distinct roots and a rank-r2 sequence with k2 distinct roots.
inline Integer product_rank_bound(unsigned long r1, unsigned long k1, unsigned long r2, unsigned long k2) {
    if (k1 < 1 || k2 < 1 || k1 > r1 || k2 > r2)
        throw Error(Errc::k_greater_than_r, "need r >= k >= 1 for both factors");
    Integer a1 = r1, b1 = k1, a2 = r2, b2 = k2;
    return a1 * a2 - (a1 - b1) * (a2 - b2);
}

/// binom(M+r-1, M): all roots distinct.
inline Integer power_bound_distinct(unsigned long r, unsigned long M) {
    if (r < 1 || M < 1)
        throw Error(Errc::invalid_argument, "r and M must be >= 1");
    return binomial(static_cast<long>(M + r - 1), static_cast<long>(M));
}

/// (r-k) binom(M+k-1, M-1) + binom(M+k-1, M)
inline Integer power_bound_refined(unsigned long r, unsigned long k, unsigned long M) {
    if (r < 1 || M < 1 || k < 1)
        throw Error(Errc::invalid_argument, "r, k and M must be >= 1");
    if (k > r)
        throw Error(Errc::k_greater_than_r, "k = " + std::to_string(k) + " exceeds r = " + std::to_string(r));
    auto n = static_cast<long>(M + k - 1);
    return Integer(r - k) * binomial(n, static_cast<long>(M - 1)) + binomial(n, static_cast<long>(M));
}

/// Worst-case rank of s^M by direct enumeration: every multiset of M roots is
/// treated as a distinct product root carrying the multiplicity given by
/// product_multiplicity_general.
inline Integer bound_oracle(const RootSpec& spec, unsigned long M, unsigned long limit = 1'000'000) {
    std::size_t k = spec.k();
    if (k < 1 || M < 1)
        throw Error(Errc::invalid_argument, "need k >= 1 and M >= 1");
    if (binomial(static_cast<long>(M + k - 1), static_cast<long>(M)) > limit)
        throw Error(Errc::too_large, "too many multisets to enumerate");

    Integer total = 0;
    std::vector<unsigned long> chosen; // multiplicities of the M picked roots
    chosen.reserve(M);
    // Nondecreasing root indices enumerate multisets exactly once.
    auto rec = [&](auto&& self, std::size_t first) -> void {
        if (chosen.size() == M) {
            total += product_multiplicity_general(chosen);
            return;
        }
        for (std::size_t i = first; i < k; ++i) {
            chosen.push_back(spec.multiplicities[i]);
            self(self, i);
            chosen.pop_back();
        }
    };
    rec(rec, 0);
    return total;
}

} // namespace crseq
