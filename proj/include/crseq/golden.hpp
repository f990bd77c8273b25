#pragma once

#include <cstddef>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "crseq/error.hpp"
#include "crseq/polynomial.hpp"
#include "crseq/rational.hpp"

namespace crseq {

/// One published rank sequence: the recurrence, the listed entries (possibly
/// with gaps) and the eventual polynomial in M.
struct GoldenRankRow {
    std::size_t rank = 0;
    std::vector<long> coeffs;
    std::vector<std::pair<std::size_t, std::size_t>> entries; // (M, rank of s^M)
    RationalPolynomial polynomial;
    bool bold = false;

    std::size_t max_M() const { return entries.empty() ? 0 : entries.back().first; }

    /// True when the listed entries are exactly M = 1..max_M().
    bool contiguous() const { return entries.size() == max_M(); }

    /// Smallest M from which every listed entry lies on the polynomial.
    std::size_t polynomial_onset() const {
        std::size_t onset = max_M() + 1;
        for (auto it = entries.rbegin(); it != entries.rend(); ++it) {
            if (polynomial(Rational(static_cast<unsigned long>(it->first))) !=
                Rational(static_cast<unsigned long>(it->second)))
                break;
            onset = it->first;
        }
        return onset;
    }
};

/// Minimal recurrence of one power, coefficients highest shift first.
struct GoldenRecurrenceRow {
    std::size_t M = 0;
    std::vector<Integer> coeffs;
};

namespace detail {

inline std::vector<std::string> split(std::string_view s, char sep) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        auto pos = s.find(sep, start);
        out.emplace_back(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
        if (pos == std::string_view::npos)
            return out;
        start = pos + 1;
    }
}

inline std::vector<std::vector<std::string>> tsv_records(std::string_view text) {
    std::vector<std::vector<std::string>> out;
    bool header = true;
    for (auto& line : split(text, '\n')) {
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        if (line.empty() || line[0] == '#')
            continue;
        if (header) {
            header = false;
            continue;
        }
        out.push_back(split(line, '\t'));
    }
    return out;
}

} // namespace detail

/// Rank table: columns rank, coeffs, ranks, polynomial, bold. The ranks column
/// is a list of runs "M0:v,v,...;M1:v,..." giving consecutive entries from M0.
/// The polynomial column lists coefficients from the constant term upward.
inline std::vector<GoldenRankRow> parse_rank_table(std::string_view text) {
    std::vector<GoldenRankRow> rows;
    for (const auto& rec : detail::tsv_records(text)) {
        if (rec.size() != 5)
            throw Error(Errc::parse_error, "rank table record needs 5 fields, got " + std::to_string(rec.size()));
        GoldenRankRow row;
        row.rank = detail::parse_size(rec[0]);
        for (const auto& c : detail::split(rec[1], ','))
            row.coeffs.push_back(detail::parse_long(c));
        for (const auto& run : detail::split(rec[2], ';')) {
            auto colon = run.find(':');
            if (colon == std::string::npos)
                throw Error(Errc::parse_error, "rank run without start index: '" + run + "'");
            std::size_t M = detail::parse_size(run.substr(0, colon));
            for (const auto& v : detail::split(std::string_view(run).substr(colon + 1), ','))
                row.entries.emplace_back(M++, detail::parse_size(v));
        }
        row.polynomial = RationalPolynomial(parse_rational_list(rec[3]));
        row.bold = rec[4] == "1";
        if (row.coeffs.size() != row.rank)
            throw Error(Errc::parse_error, "coefficient count does not match rank in row " + rec[1]);
        rows.push_back(std::move(row));
    }
    return rows;
}

inline std::vector<GoldenRecurrenceRow> parse_recurrence_table(std::string_view text) {
    std::vector<GoldenRecurrenceRow> rows;
    for (const auto& rec : detail::tsv_records(text)) {
        if (rec.size() != 2)
            throw Error(Errc::parse_error, "recurrence table record needs 2 fields");
        GoldenRecurrenceRow row;
        row.M = detail::parse_size(rec[0]);
        for (const auto& c : detail::split(rec[1], ','))
            row.coeffs.push_back(parse_integer(c));
        rows.push_back(std::move(row));
    }
    return rows;
}

} // namespace crseq
