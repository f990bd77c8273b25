#pragma once

#include <cstddef>
#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

#include "crseq/error.hpp"
#include "crseq/rational.hpp"

namespace crseq {

/// Dense univariate polynomial over Q. coeffs()[i] is the coefficient of x^i;
/// the highest stored coefficient is nonzero and the zero polynomial is empty.
class RationalPolynomial {
public:
    RationalPolynomial() = default;

    explicit RationalPolynomial(std::vector<Rational> low_to_high) : c_(std::move(low_to_high)) {
        trim();
    }

    RationalPolynomial(std::initializer_list<Rational> low_to_high) : c_(low_to_high) { trim(); }

    static RationalPolynomial constant(const Rational& a) { return RationalPolynomial({a}); }

    /// x - a
    static RationalPolynomial linear_root(const Rational& a) { return RationalPolynomial({-a, 1}); }

    static RationalPolynomial monomial(const Rational& a, std::size_t degree) {
        std::vector<Rational> c(degree + 1);
        c[degree] = a;
        return RationalPolynomial(std::move(c));
    }

    const std::vector<Rational>& coeffs() const noexcept { return c_; }
    bool is_zero() const noexcept { return c_.empty(); }

    /// -1 for the zero polynomial.
    long degree() const noexcept { return static_cast<long>(c_.size()) - 1; }

    Rational coeff(std::size_t i) const { return i < c_.size() ? c_[i] : Rational(0); }

    const Rational& leading() const {
        if (c_.empty())
            throw Error(Errc::zero_polynomial, "leading coefficient of zero polynomial");
        return c_.back();
    }

    bool is_monic() const { return !c_.empty() && c_.back() == 1; }

    RationalPolynomial monic() const {
        if (c_.empty())
            return {};
        RationalPolynomial out = *this;
        Rational lc = c_.back();
        for (auto& a : out.c_)
            a /= lc;
        return out;
    }

    Rational operator()(const Rational& x) const {
        Rational acc = 0;
        for (auto it = c_.rbegin(); it != c_.rend(); ++it)
            acc = acc * x + *it;
        return acc;
    }

    RationalPolynomial derivative() const {
        if (c_.size() <= 1)
            return {};
        std::vector<Rational> d(c_.size() - 1);
        for (std::size_t i = 1; i < c_.size(); ++i)
            d[i - 1] = c_[i] * static_cast<unsigned long>(i);
        return RationalPolynomial(std::move(d));
    }

    friend RationalPolynomial operator+(const RationalPolynomial& a, const RationalPolynomial& b) {
        std::vector<Rational> c(std::max(a.c_.size(), b.c_.size()));
        for (std::size_t i = 0; i < c.size(); ++i)
            c[i] = a.coeff(i) + b.coeff(i);
        return RationalPolynomial(std::move(c));
    }

    friend RationalPolynomial operator-(const RationalPolynomial& a, const RationalPolynomial& b) {
        std::vector<Rational> c(std::max(a.c_.size(), b.c_.size()));
        for (std::size_t i = 0; i < c.size(); ++i)
            c[i] = a.coeff(i) - b.coeff(i);
        return RationalPolynomial(std::move(c));
    }

    friend RationalPolynomial operator*(const RationalPolynomial& a, const RationalPolynomial& b) {
        if (a.is_zero() || b.is_zero())
            return {};
        std::vector<Rational> c(a.c_.size() + b.c_.size() - 1);
        for (std::size_t i = 0; i < a.c_.size(); ++i) {
            if (a.c_[i] == 0)
                continue;
            for (std::size_t j = 0; j < b.c_.size(); ++j)
                c[i + j] += a.c_[i] * b.c_[j];
        }
        return RationalPolynomial(std::move(c));
    }

    friend RationalPolynomial operator*(const Rational& s, const RationalPolynomial& p) {
        if (s == 0)
            return {};
        RationalPolynomial out = p;
        for (auto& a : out.c_)
            a *= s;
        return out;
    }

    friend bool operator==(const RationalPolynomial& a, const RationalPolynomial& b) {
        return a.c_ == b.c_;
    }

    /// Euclidean division; returns {quotient, remainder}.
    friend std::pair<RationalPolynomial, RationalPolynomial> divmod(const RationalPolynomial& a,
                                                                    const RationalPolynomial& b) {
        if (b.is_zero())
            throw Error(Errc::zero_polynomial, "division by zero polynomial");
        if (a.degree() < b.degree())
            return {RationalPolynomial{}, a};
        std::vector<Rational> rem = a.c_;
        std::vector<Rational> quo(a.c_.size() - b.c_.size() + 1);
        const Rational& lb = b.c_.back();
        for (std::size_t i = quo.size(); i-- > 0;) {
            Rational f = rem[i + b.c_.size() - 1] / lb;
            quo[i] = f;
            if (f == 0)
                continue;
            for (std::size_t j = 0; j < b.c_.size(); ++j)
                rem[i + j] -= f * b.c_[j];
        }
        return {RationalPolynomial(std::move(quo)), RationalPolynomial(std::move(rem))};
    }

    std::string to_string(const std::string& var = "x") const;

private:
    void trim() {
        while (!c_.empty() && c_.back() == 0)
            c_.pop_back();
    }

    std::vector<Rational> c_;
};

inline std::string RationalPolynomial::to_string(const std::string& var) const {
    if (c_.empty())
        return "0";
    std::string out;
    for (std::size_t i = c_.size(); i-- > 0;) {
        const Rational& a = c_[i];
        if (a == 0)
            continue;
        Rational mag = abs(a);
        if (out.empty())
            out += a < 0 ? "-" : "";
        else
            out += a < 0 ? " - " : " + ";
        std::string mono = i == 0 ? "" : (i == 1 ? var : var + "^" + std::to_string(i));
        if (i == 0) {
            out += crseq::to_string(mag);
        } else if (is_integer(mag)) {
            if (mag != 1)
                out += crseq::to_string(mag);
            out += mono;
        } else {
            if (mag.get_num() != 1)
                out += mag.get_num().get_str();
            out += mono + "/" + mag.get_den().get_str();
        }
    }
    return out;
}

inline RationalPolynomial poly_mul(const RationalPolynomial& a, const RationalPolynomial& b) {
    return a * b;
}

/// Monic gcd. Throws BothZero when both inputs vanish.
inline RationalPolynomial poly_gcd(RationalPolynomial a, RationalPolynomial b) {
    if (a.is_zero() && b.is_zero())
        throw Error(Errc::both_zero, "gcd of two zero polynomials");
    while (!b.is_zero()) {
        auto r = divmod(a, b).second;
        a = std::move(b);
        b = r.monic(); // keeps coefficient growth in check
    }
    return a.monic();
}

/// p / gcd(p, p'), monic. Its degree is the number of distinct complex roots of p.
inline RationalPolynomial squarefree_part(const RationalPolynomial& p) {
    if (p.is_zero())
        throw Error(Errc::zero_polynomial, "squarefree part of zero polynomial");
    if (p.degree() == 0)
        return RationalPolynomial::constant(1);
    auto g = poly_gcd(p, p.derivative());
    return divmod(p, g).first.monic();
}

inline std::size_t distinct_root_count(const RationalPolynomial& p) {
    return static_cast<std::size_t>(squarefree_part(p).degree());
}

/// Binomial coefficient; 0 when k < 0 or k > n.
inline Integer binomial(long n, long k) {
    if (n < 0)
        throw Error(Errc::invalid_argument, "binomial with negative n");
    if (k < 0 || k > n)
        return 0;
    Integer out;
    mpz_bin_uiui(out.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return out;
}

} // namespace crseq
