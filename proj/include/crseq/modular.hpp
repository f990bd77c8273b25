#pragma once

#include <cstddef>
#include <cstdint>
#include <mutex>
#include <optional>
#include <vector>

#include "crseq/error.hpp"
#include "crseq/rational.hpp"

namespace crseq::modular {

inline std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % p);
}

inline std::uint64_t add_mod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
    std::uint64_t s = a + b; // a, b < p < 2^63
    return s >= p ? s - p : s;
}

inline std::uint64_t sub_mod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
    return a >= b ? a - b : a + p - b;
}

inline std::uint64_t pow_mod(std::uint64_t a, std::uint64_t e, std::uint64_t p) {
    std::uint64_t r = 1 % p;
    while (e) {
        if (e & 1)
            r = mul_mod(r, a, p);
        a = mul_mod(a, a, p);
        e >>= 1;
    }
    return r;
}

/// p must be prime and a nonzero mod p.
inline std::uint64_t inv_mod(std::uint64_t a, std::uint64_t p) { return pow_mod(a, p - 2, p); }

inline std::uint64_t reduce(const Integer& z, std::uint64_t p) {
    // mpz_fdiv_ui takes an unsigned long; 64-bit on the supported platforms.
    static_assert(sizeof(unsigned long) == sizeof(std::uint64_t));
    return mpz_fdiv_ui(z.get_mpz_t(), p);
}

/// Deterministic Miller-Rabin for 64-bit inputs.
inline bool is_prime_u64(std::uint64_t n) {
    if (n < 2)
        return false;
    for (std::uint64_t q : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n % q == 0)
            return n == q;
    }
    std::uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    for (std::uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        std::uint64_t x = pow_mod(a, d, n);
        if (x == 1 || x == n - 1)
            continue;
        bool composite = true;
        for (int i = 1; i < s; ++i) {
            x = mul_mod(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite)
            return false;
    }
    return true;
}

/// The i-th prime below 2^62, descending. Thread-safe.
inline std::uint64_t prime(std::size_t i) {
    static std::mutex mu;
    static std::vector<std::uint64_t> table;
    std::lock_guard lock(mu);
    std::uint64_t candidate = table.empty() ? (1ull << 62) - 1 : table.back() - 2;
    while (table.size() <= i) {
        while (!is_prime_u64(candidate))
            candidate -= 2;
        table.push_back(candidate);
        candidate -= 2;
    }
    return table[i];
}

/// Incremental Chinese remaindering of a vector of residues.
class CrtAccumulator {
public:
    explicit CrtAccumulator(std::size_t size) : values_(size), modulus_(1) {}

    void add(const std::vector<std::uint64_t>& residues, std::uint64_t p) {
        if (residues.size() != values_.size())
            throw Error(Errc::invalid_argument, "residue vector size mismatch");
        Integer pz(static_cast<unsigned long>(p));
        std::uint64_t m_mod_p = reduce(modulus_, p);
        std::uint64_t inv = inv_mod(m_mod_p, p);
        for (std::size_t i = 0; i < values_.size(); ++i) {
            // x = v + m * ((r - v) / m mod p)
            std::uint64_t v_mod_p = reduce(values_[i], p);
            std::uint64_t t = mul_mod(sub_mod(residues[i], v_mod_p, p), inv, p);
            values_[i] += modulus_ * Integer(static_cast<unsigned long>(t));
        }
        modulus_ *= pz;
        ++count_;
    }

    const std::vector<Integer>& values() const noexcept { return values_; }
    const Integer& modulus() const noexcept { return modulus_; }
    std::size_t count() const noexcept { return count_; }

private:
    std::vector<Integer> values_;
    Integer modulus_;
    std::size_t count_ = 0;
};

/// Symmetric lift of a residue into (-m/2, m/2].
inline Integer symmetric_lift(const Integer& a, const Integer& m) {
    Integer half = m / 2;
    return a > half ? Integer(a - m) : a;
}

/// Rational reconstruction (Wang): finds n/d ≡ a (mod m) with |n|, d ≤ sqrt(m/2).
inline std::optional<Rational> rational_reconstruct(const Integer& a, const Integer& m) {
    Integer bound;
    Integer half = m / 2;
    mpz_sqrt(bound.get_mpz_t(), half.get_mpz_t());
    Integer r0 = m, r1 = a % m;
    if (r1 < 0)
        r1 += m;
    Integer t0 = 0, t1 = 1;
    while (r1 > bound) {
        Integer q = r0 / r1;
        Integer r2 = r0 - q * r1;
        Integer t2 = t0 - q * t1;
        r0 = std::move(r1);
        r1 = std::move(r2);
        t0 = std::move(t1);
        t1 = std::move(t2);
    }
    if (t1 == 0 || abs(t1) > bound)
        return std::nullopt;
    if (gcd(r1, t1) != 1)
        return std::nullopt;
    return make_rational(r1, t1);
}

/// Determinant of a square matrix over Z/p (row-major, destroyed).
inline std::uint64_t det_mod(std::vector<std::uint64_t> a, std::size_t n, std::uint64_t p) {
    std::uint64_t det = 1;
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        while (piv < n && a[piv * n + col] == 0)
            ++piv;
        if (piv == n)
            return 0;
        if (piv != col) {
            for (std::size_t j = 0; j < n; ++j)
                std::swap(a[piv * n + j], a[col * n + j]);
            det = det == 0 ? 0 : p - det;
        }
        std::uint64_t pv = a[col * n + col];
        det = mul_mod(det, pv, p);
        std::uint64_t inv = inv_mod(pv, p);
        for (std::size_t i = col + 1; i < n; ++i) {
            std::uint64_t f = mul_mod(a[i * n + col], inv, p);
            if (f == 0)
                continue;
            for (std::size_t j = col; j < n; ++j)
                a[i * n + j] = sub_mod(a[i * n + j], mul_mod(f, a[col * n + j], p), p);
        }
    }
    return det;
}

} // namespace crseq::modular
