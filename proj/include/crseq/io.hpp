#pragma once

#include <cstddef>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "crseq/error.hpp"
#include "crseq/lattice.hpp"
#include "crseq/rational.hpp"
#include "crseq/sequence.hpp"

namespace crseq {

using json = nlohmann::json;

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw Error(Errc::parse_error, "cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

namespace detail {

/// Accepts "p/q" strings as well as plain JSON integers.
inline Rational rational_from_json(const json& v) {
    if (v.is_string())
        return parse_rational(v.get<std::string>());
    if (v.is_number_integer())
        return Rational(Integer(v.dump()));
    throw Error(Errc::parse_error, "expected a rational string or integer, got " + v.dump());
}

inline std::vector<Rational> rational_list_from_json(const json& v, const char* what) {
    if (!v.is_array())
        throw Error(Errc::parse_error, std::string("'") + what + "' must be an array");
    std::vector<Rational> out;
    for (const auto& x : v)
        out.push_back(rational_from_json(x));
    return out;
}

inline json parse_json(std::string_view text) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw Error(Errc::parse_error, std::string("invalid JSON: ") + e.what());
    }
}

} // namespace detail

/// {"coeffs": ["5","-9","7","-2"], "init": ["1","1","2","1"]}, optional "label".
inline LinRecSequence sequence_from_json(const json& j) {
    if (!j.is_object() || !j.contains("coeffs") || !j.contains("init"))
        throw Error(Errc::parse_error, "sequence literal needs \"coeffs\" and \"init\"");
    auto coeffs = detail::rational_list_from_json(j.at("coeffs"), "coeffs");
    auto init = detail::rational_list_from_json(j.at("init"), "init");
    std::string label = j.contains("label") ? j.at("label").get<std::string>() : "";
    return LinRecSequence(Recurrence(std::move(coeffs)), std::move(init), std::move(label));
}

inline LinRecSequence parse_sequence_json(std::string_view text) {
    return sequence_from_json(detail::parse_json(text));
}

inline json to_json(const LinRecSequence& s) {
    json j;
    j["coeffs"] = json::array();
    for (const auto& c : s.recurrence().coeffs())
        j["coeffs"].push_back(to_string(c));
    j["init"] = json::array();
    for (const auto& v : s.initial_terms())
        j["init"].push_back(to_string(v));
    if (!s.label().empty())
        j["label"] = s.label();
    return j;
}

/// {"k": 5, "relations": [[4,-1,-1,-1,-1], [2,1,-2,1,-2]]}
inline RelationLattice lattice_from_json(const json& j) {
    if (!j.is_object() || !j.contains("k"))
        throw Error(Errc::parse_error, "lattice needs \"k\"");
    if (!j.at("k").is_number_unsigned())
        throw Error(Errc::parse_error, "\"k\" must be a positive integer");
    IntMatrix rel;
    if (j.contains("relations")) {
        for (const auto& row : j.at("relations")) {
            if (!row.is_array())
                throw Error(Errc::parse_error, "each relation must be an array");
            std::vector<Integer> r;
            for (const auto& x : row) {
                Rational q = detail::rational_from_json(x);
                if (!is_integer(q))
                    throw Error(Errc::parse_error, "relation entries must be integers");
                r.push_back(q.get_num());
            }
            rel.push_back(std::move(r));
        }
    }
    return RelationLattice(j.at("k").get<std::size_t>(), std::move(rel));
}

inline RelationLattice parse_lattice_json(std::string_view text) {
    return lattice_from_json(detail::parse_json(text));
}

inline json to_json(const RelationLattice& L) {
    json j;
    j["k"] = L.k();
    j["relations"] = json::array();
    for (const auto& row : L.relations()) {
        json r = json::array();
        for (const auto& x : row)
            r.push_back(json::parse(x.get_str()));
        j["relations"].push_back(std::move(r));
    }
    return j;
}

/// OEIS b-file: lines "n a(n)"; '#' comments and blank lines are skipped.
/// Returns the values in order and checks that indices are consecutive.
struct BFile {
    long offset = 0;
    std::vector<Integer> values;
};

inline BFile parse_bfile(std::string_view text) {
    BFile out;
    std::istringstream in{std::string(text)};
    std::string line;
    std::size_t lineno = 0;
    bool first = true;
    long expect = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto t = detail::trim(line);
        if (t.empty() || t.front() == '#')
            continue;
        std::istringstream ls{std::string(t)};
        std::string n, v;
        if (!(ls >> n >> v))
            throw Error(Errc::parse_error, "b-file line " + std::to_string(lineno) + ": expected 'n a(n)'");
        long idx = detail::parse_long(n);
        if (first) {
            out.offset = idx;
            expect = idx;
            first = false;
        }
        if (idx != expect)
            throw Error(Errc::parse_error, "b-file line " + std::to_string(lineno) + ": index " + n +
                                               " out of sequence, expected " + std::to_string(expect));
        out.values.push_back(parse_integer(v));
        ++expect;
    }
    return out;
}

} // namespace crseq
