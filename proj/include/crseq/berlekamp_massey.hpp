#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "crseq/modular.hpp"
#include "crseq/rational.hpp"

namespace crseq {

/// Field policies for berlekamp_massey.
struct RationalField {
    using value_type = Rational;
    value_type zero() const { return 0; }
    value_type one() const { return 1; }
    bool is_zero(const value_type& a) const { return a == 0; }
    value_type add(const value_type& a, const value_type& b) const { return a + b; }
    value_type sub(const value_type& a, const value_type& b) const { return a - b; }
    value_type mul(const value_type& a, const value_type& b) const { return a * b; }
    value_type div(const value_type& a, const value_type& b) const { return a / b; }
};

struct PrimeField {
    std::uint64_t p;
    using value_type = std::uint64_t;
    value_type zero() const { return 0; }
    value_type one() const { return 1; }
    bool is_zero(value_type a) const { return a == 0; }
    value_type add(value_type a, value_type b) const { return modular::add_mod(a, b, p); }
    value_type sub(value_type a, value_type b) const { return modular::sub_mod(a, b, p); }
    value_type mul(value_type a, value_type b) const { return modular::mul_mod(a, b, p); }
    value_type div(value_type a, value_type b) const {
        return modular::mul_mod(a, modular::inv_mod(b, p), p);
    }
};

/// Shortest linear feedback shift register of a finite sequence.
///
/// `connection` has length + 1 entries, connection[0] = 1, and
///   sum_{i=0}^{length} connection[i] * s[n - i] = 0   for length <= n < size.
/// Trailing entries may be zero; they correspond to a power of x dividing the
/// characteristic polynomial.
template <class T>
struct ShiftRegister {
    std::vector<T> connection;
    std::size_t length = 0;
};

template <class Field>
ShiftRegister<typename Field::value_type> berlekamp_massey(const Field& f,
                                                           std::span<const typename Field::value_type> s) {
    using V = typename Field::value_type;
    std::vector<V> C{f.one()}, B{f.one()};
    std::size_t L = 0, m = 1;
    V b = f.one();
    for (std::size_t n = 0; n < s.size(); ++n) {
        V d = s[n];
        for (std::size_t i = 1; i <= L && i < C.size(); ++i) {
            if (!f.is_zero(C[i]))
                d = f.add(d, f.mul(C[i], s[n - i]));
        }
        if (f.is_zero(d)) {
            ++m;
            continue;
        }
        V coef = f.div(d, b);
        auto apply = [&](std::vector<V>& target) {
            if (target.size() < B.size() + m)
                target.resize(B.size() + m, f.zero());
            for (std::size_t i = 0; i < B.size(); ++i) {
                if (!f.is_zero(B[i]))
                    target[i + m] = f.sub(target[i + m], f.mul(coef, B[i]));
            }
        };
        if (2 * L <= n) {
            std::vector<V> T = C;
            apply(C);
            L = n + 1 - L;
            B = std::move(T);
            b = d;
            m = 1;
        } else {
            apply(C);
            ++m;
        }
    }
    C.resize(L + 1, f.zero());
    return {std::move(C), L};
}

} // namespace crseq
