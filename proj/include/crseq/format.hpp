#pragma once

#include <algorithm>
#include <optional>
#include <ostream>
#include <string>
#include <type_traits>
#include <vector>

#include <json.hpp>

#include "crseq/error.hpp"
#include "crseq/explorer.hpp"
#include "crseq/rational.hpp"

namespace crseq {

enum class Format { text, json, tsv, md };

inline Format parse_format(const std::string& s) {
    if (s == "text")
        return Format::text;
    if (s == "json" || s == "jsonl")
        return Format::json;
    if (s == "tsv")
        return Format::tsv;
    if (s == "md")
        return Format::md;
    throw Error(Errc::invalid_argument, "unknown format '" + s + "' (expected text, json, tsv or md)");
}

template <class Range>
std::string join(const Range& xs, const std::string& sep) {
    std::string out;
    bool first = true;
    for (const auto& x : xs) {
        if (!first)
            out += sep;
        first = false;
        if constexpr (std::is_convertible_v<decltype(x), std::string>)
            out += x;
        else if constexpr (std::is_arithmetic_v<std::decay_t<decltype(x)>>)
            out += std::to_string(x);
        else
            out += to_string(x);
    }
    return out;
}

/// A table of strings, printed as TSV, JSON lines, Markdown or aligned text.
struct Table {
    std::vector<std::string> headers;
    std::vector<std::vector<std::string>> rows;

    void write(std::ostream& os, Format f) const {
        switch (f) {
        case Format::tsv:
            os << join(headers, "\t") << '\n';
            for (const auto& r : rows)
                os << join(r, "\t") << '\n';
            break;
        case Format::json:
            for (const auto& r : rows) {
                nlohmann::ordered_json j;
                for (std::size_t i = 0; i < headers.size(); ++i)
                    j[headers[i]] = i < r.size() ? r[i] : "";
                os << j.dump() << '\n';
            }
            break;
        case Format::md:
            os << "| " << join(headers, " | ") << " |\n|";
            for (std::size_t i = 0; i < headers.size(); ++i)
                os << "---|";
            os << '\n';
            for (const auto& r : rows)
                os << "| " << join(r, " | ") << " |\n";
            break;
        case Format::text: {
            std::vector<std::size_t> w(headers.size());
            for (std::size_t i = 0; i < headers.size(); ++i) {
                w[i] = headers[i].size();
                for (const auto& r : rows)
                    if (i < r.size())
                        w[i] = std::max(w[i], r[i].size());
            }
            auto line = [&](const std::vector<std::string>& r) {
                std::string s;
                for (std::size_t i = 0; i < headers.size(); ++i) {
                    std::string cell = i < r.size() ? r[i] : "";
                    s += cell;
                    if (i + 1 < headers.size())
                        s += std::string(w[i] - cell.size() + 2, ' ');
                }
                while (!s.empty() && s.back() == ' ')
                    s.pop_back();
                os << s << '\n';
            };
            line(headers);
            for (const auto& r : rows)
                line(r);
            break;
        }
        }
    }
};

inline std::string fit_text(const std::optional<QuasiPolynomial>& q) { return q ? q->to_string() : "?"; }

/// Search results in the layout of the published tables.
inline Table search_table(const SearchResult& res) {
    Table t{{"coefficients", "rank_sequence", "eventual_polynomial", "classification", "bound", "tuples"}, {}};
    for (const auto& r : res.rows)
        t.rows.push_back({join(r.coeffs, ","), join(r.ranks, ","), fit_text(r.fit), to_string(r.classification),
                          r.attains_bound ? "yes" : "no", std::to_string(r.tuple_count)});
    return t;
}

} // namespace crseq
