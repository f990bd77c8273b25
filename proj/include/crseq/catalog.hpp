#pragma once

#include <string>
#include <vector>

#include "crseq/error.hpp"
#include "crseq/sequence.hpp"

namespace crseq::catalog {

inline LinRecSequence make(std::vector<long> coeffs, std::vector<long> init, std::string label) {
    std::vector<Rational> c(coeffs.begin(), coeffs.end()), i(init.begin(), init.end());
    return LinRecSequence(Recurrence(std::move(c)), std::move(i), std::move(label));
}

/// F(0) = 0, F(1) = 1.
inline LinRecSequence fibonacci() { return make({1, 1}, {0, 1}, "fibonacci"); }

// Three solutions of a^3 + b^3 = c^3 + (-1)^n sharing one cubic recurrence.
inline LinRecSequence ramanujan_a() { return make({82, 82, -1}, {1, 135, 11161}, "ramanujan-a"); }
inline LinRecSequence ramanujan_b() { return make({82, 82, -1}, {2, 138, 11468}, "ramanujan-b"); }
inline LinRecSequence ramanujan_c() { return make({82, 82, -1}, {2, 172, 14258}, "ramanujan-c"); }

inline std::vector<std::string> names() { return {"fibonacci", "ramanujan-a", "ramanujan-b", "ramanujan-c"}; }

inline LinRecSequence by_name(const std::string& name) {
    if (name == "fibonacci")
        return fibonacci();
    if (name == "ramanujan-a")
        return ramanujan_a();
    if (name == "ramanujan-b")
        return ramanujan_b();
    if (name == "ramanujan-c")
        return ramanujan_c();
    throw Error(Errc::invalid_argument, "unknown sequence '" + name + "'");
}

} // namespace crseq::catalog
