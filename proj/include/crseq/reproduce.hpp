#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <tuple>
#include <vector>

#include "crseq/explorer.hpp"
#include "crseq/golden.hpp"
#include "crseq/rank.hpp"

namespace crseq {

/// Runs fn(i) for i in [0, n) on up to `threads` workers; rethrows the first failure.
template <class Fn>
void parallel_for(std::size_t n, std::size_t threads, Fn fn) {
    std::atomic<std::size_t> next{0};
    std::mutex mu;
    std::exception_ptr failure;
    auto work = [&] {
        for (std::size_t i; (i = next.fetch_add(1)) < n;) {
            try {
                fn(i);
            } catch (...) {
                std::lock_guard lock(mu);
                if (!failure)
                    failure = std::current_exception();
                next = n;
            }
        }
    };
    std::size_t t = std::min(worker_count(threads), std::max<std::size_t>(n, 1));
    std::vector<std::thread> pool;
    for (std::size_t k = 1; k < t; ++k)
        pool.emplace_back(work);
    work();
    for (auto& th : pool)
        th.join();
    if (failure)
        std::rethrow_exception(failure);
}

/// Published rows whose listed values are known to disagree with exact
/// computation, keyed by (table, coefficients).
struct Discrepancy {
    std::string table;
    std::vector<long> coeffs;
    std::string note;
};

inline std::vector<Discrepancy> parse_discrepancies(std::string_view text) {
    std::vector<Discrepancy> out;
    for (const auto& rec : detail::tsv_records(text)) {
        if (rec.size() != 3)
            throw Error(Errc::parse_error, "discrepancy record needs 3 fields");
        Discrepancy d{rec[0], {}, rec[2]};
        for (const auto& c : detail::split(rec[1], ','))
            d.coeffs.push_back(detail::parse_long(c));
        out.push_back(std::move(d));
    }
    return out;
}

struct ReproduceOptions {
    /// Highest power computed unless `deep` is set.
    std::size_t mmax_cap = 8;
    /// Compute every listed entry and as many powers as the polynomial check needs.
    bool deep = false;
    GenericOptions generic;
    RankOptions rank;
    FitOptions fit;
    std::size_t threads = 0;
};

enum class RowStatus { match, mismatch, known_discrepancy, partial };

inline const char* to_string(RowStatus s) {
    switch (s) {
    case RowStatus::match: return "match";
    case RowStatus::mismatch: return "MISMATCH";
    case RowStatus::known_discrepancy: return "known-discrepancy";
    case RowStatus::partial: return "partial";
    }
    return "?";
}

enum class FitStatus { match, mismatch, not_checked };

struct RowReport {
    GoldenRankRow golden;
    RankSequence computed; // M = 1..computed.size()
    std::vector<std::tuple<std::size_t, std::size_t, std::size_t>> mismatches; // (M, listed, computed)
    std::vector<std::size_t> skipped; // listed M beyond the computed range
    std::optional<QuasiPolynomial> fit;
    FitStatus fit_status = FitStatus::not_checked;
    RowStatus status = RowStatus::match;
    std::string note;
};

/// Number of powers needed before the eventual polynomial of a row can be
/// recovered by fit_quasi_polynomial: its onset plus one full fitting window.
inline std::size_t fit_horizon(const GoldenRankRow& row, const FitOptions& fit = {}) {
    std::size_t d = static_cast<std::size_t>(std::max(0L, row.polynomial.degree()));
    std::size_t onset = std::min(row.polynomial_onset(), row.max_M() + 1);
    return std::max(row.max_M(), onset + std::max(fit.window, d + 2) - 1);
}

inline RowReport check_rank_row(const GoldenRankRow& row, std::size_t mmax, const ReproduceOptions& opt,
                                std::uint64_t seed) {
    RowReport rep;
    rep.golden = row;
    GenericOptions g = opt.generic;
    g.seed = seed;
    rep.computed = generic_rank_sequence(detail::recurrence_of(row.coeffs), mmax, g, opt.rank);
    for (auto [M, v] : row.entries) {
        if (M > mmax)
            rep.skipped.push_back(M);
        else if (rep.computed[M - 1] != v)
            rep.mismatches.emplace_back(M, v, rep.computed[M - 1]);
    }
    rep.fit = fit_quasi_polynomial(rep.computed, opt.fit);
    if (mmax >= fit_horizon(row, opt.fit))
        rep.fit_status = rep.fit && rep.fit->period == 1 && rep.fit->components.front() == row.polynomial
                             ? FitStatus::match
                             : FitStatus::mismatch;
    if (!rep.mismatches.empty() || rep.fit_status == FitStatus::mismatch)
        rep.status = RowStatus::mismatch;
    else if (!rep.skipped.empty() || rep.fit_status == FitStatus::not_checked)
        rep.status = RowStatus::partial;
    return rep;
}

/// Recomputes every row of a rank table. Rows listed in `known` that disagree
/// are reported as known discrepancies instead of mismatches.
inline std::vector<RowReport> reproduce_rank_table(const std::string& table, const std::vector<GoldenRankRow>& rows,
                                                   const std::vector<Discrepancy>& known,
                                                   const ReproduceOptions& opt = {}) {
    std::vector<RowReport> out(rows.size());
    parallel_for(rows.size(), opt.threads, [&](std::size_t i) {
        const auto& row = rows[i];
        std::size_t mmax = opt.deep ? fit_horizon(row, opt.fit) : std::min(opt.mmax_cap, fit_horizon(row, opt.fit));
        out[i] = check_rank_row(row, mmax, opt, detail::splitmix64(opt.generic.seed ^ detail::splitmix64(i)));
    });
    for (auto& rep : out) {
        auto it = std::find_if(known.begin(), known.end(), [&](const Discrepancy& d) {
            return d.table == table && d.coeffs == rep.golden.coeffs;
        });
        if (it == known.end())
            continue;
        rep.note = it->note;
        if (rep.status == RowStatus::mismatch)
            rep.status = RowStatus::known_discrepancy;
    }
    return out;
}

struct RecurrenceReport {
    std::size_t M = 0;
    std::vector<Integer> listed;
    std::vector<Rational> computed;
    bool match = false;
};

/// Minimal recurrences of the listed powers of one sequence.
inline std::vector<RecurrenceReport> reproduce_recurrence_table(const LinRecSequence& seq,
                                                                const std::vector<GoldenRecurrenceRow>& rows,
                                                                const RankOptions& opts = {}) {
    std::vector<RecurrenceReport> out;
    for (const auto& row : rows) {
        RecurrenceReport rep;
        rep.M = row.M;
        rep.listed = row.coeffs;
        rep.computed = rank_of_power(seq, row.M, opts).recurrence.coeffs();
        rep.match = rep.computed.size() == rep.listed.size() &&
                    std::equal(rep.listed.begin(), rep.listed.end(), rep.computed.begin(),
                               [](const Integer& a, const Rational& b) { return Rational(a) == b; });
        out.push_back(std::move(rep));
    }
    return out;
}

} // namespace crseq
