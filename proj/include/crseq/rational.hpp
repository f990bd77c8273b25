#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <cctype>
#include <string>
#include <string_view>
#include <vector>

#include "crseq/error.hpp"

namespace crseq {

/// Arbitrary-precision integer. GMP keeps every value exact.
using Integer = mpz_class;

/// Exact rational in lowest terms with positive denominator. gmpxx
/// canonicalizes after every arithmetic operation; values built from a
/// numerator/denominator pair go through make_rational.
using Rational = mpq_class;

inline Rational make_rational(const Integer& num, const Integer& den) {
    if (den == 0)
        throw Error(Errc::invalid_argument, "zero denominator");
    Rational q(num, den);
    q.canonicalize();
    return q;
}

inline bool is_integer(const Rational& q) { return q.get_den() == 1; }

namespace detail {

inline bool valid_integer_text(std::string_view s) {
    if (!s.empty() && (s.front() == '-' || s.front() == '+'))
        s.remove_prefix(1);
    return !s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char c) {
        return std::isdigit(c) != 0;
    });
}

inline std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
        s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
        s.remove_suffix(1);
    return s;
}

inline Integer parse_integer_text(std::string_view s) {
    if (!valid_integer_text(s))
        throw Error(Errc::parse_error, "not an integer: '" + std::string(s) + "'");
    if (s.front() == '+')
        s.remove_prefix(1);
    return Integer(std::string(s), 10);
}

} // namespace detail

/// Parses "p/q" or an integer string.
inline Rational parse_rational(std::string_view text) {
    auto s = detail::trim(text);
    auto slash = s.find('/');
    if (slash == std::string_view::npos)
        return Rational(detail::parse_integer_text(s));
    auto num = detail::parse_integer_text(detail::trim(s.substr(0, slash)));
    auto den_text = detail::trim(s.substr(slash + 1));
    auto den = detail::parse_integer_text(den_text);
    if (den == 0)
        throw Error(Errc::parse_error, "zero denominator in '" + std::string(s) + "'");
    return make_rational(num, den);
}

inline Integer parse_integer(std::string_view text) {
    return detail::parse_integer_text(detail::trim(text));
}

namespace detail {

inline std::size_t parse_size(const std::string& s) {
    Integer z = parse_integer(s);
    if (z < 0 || !z.fits_ulong_p())
        throw Error(Errc::parse_error, "expected a nonnegative integer, got '" + s + "'");
    return z.get_ui();
}

inline long parse_long(const std::string& s) {
    Integer z = parse_integer(s);
    if (!z.fits_slong_p())
        throw Error(Errc::parse_error, "integer out of range: '" + s + "'");
    return z.get_si();
}

} // namespace detail

/// Comma-separated list of rationals, e.g. "5,-9,7,-2". Empty text is an empty list.
inline std::vector<Rational> parse_rational_list(std::string_view text) {
    std::vector<Rational> out;
    if (detail::trim(text).empty())
        return out;
    std::size_t start = 0;
    while (true) {
        auto comma = text.find(',', start);
        out.push_back(parse_rational(text.substr(start, comma - start)));
        if (comma == std::string_view::npos)
            break;
        start = comma + 1;
    }
    return out;
}

inline std::string to_string(const Integer& z) { return z.get_str(); }

/// Integers print without a denominator.
inline std::string to_string(const Rational& q) {
    if (is_integer(q))
        return q.get_num().get_str();
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

inline Rational pow(const Rational& q, unsigned long e) {
    Integer num, den;
    mpz_pow_ui(num.get_mpz_t(), q.get_num_mpz_t(), e);
    mpz_pow_ui(den.get_mpz_t(), q.get_den_mpz_t(), e);
    Rational out;
    out.get_num() = num;
    out.get_den() = den;
    return out; // already canonical: powers of coprime values stay coprime
}

inline Integer lcm(const Integer& a, const Integer& b) {
    Integer out;
    mpz_lcm(out.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return out;
}

inline Integer gcd(const Integer& a, const Integer& b) {
    Integer out;
    mpz_gcd(out.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return out;
}

} // namespace crseq
