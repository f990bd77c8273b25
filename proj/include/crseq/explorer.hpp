#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <cstdint>
#include <cstdlib>
#include <exception>
#include <functional>
#include <map>
#include <mutex>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <thread>
#include <vector>

#include "crseq/bounds.hpp"
#include "crseq/error.hpp"
#include "crseq/polynomial.hpp"
#include "crseq/rank.hpp"
#include "crseq/sequence.hpp"

namespace crseq {

using RankSequence = std::vector<std::size_t>;

enum class Classification { general, particular, unknown };

inline const char* to_string(Classification c) {
    switch (c) {
    case Classification::general: return "general";
    case Classification::particular: return "particular";
    case Classification::unknown: return "unknown";
    }
    return "unknown";
}

/// One polynomial in M per residue class: component i applies to the M with
/// (M - 1) mod period == i. Exact for every observed M >= onset.
struct QuasiPolynomial {
    std::size_t period = 1;
    std::vector<RationalPolynomial> components;
    std::size_t onset = 1;

    Rational operator()(std::size_t M) const {
        return components[(M - 1) % period](Rational(static_cast<unsigned long>(M)));
    }

    long degree() const {
        long d = -1;
        for (const auto& c : components)
            d = std::max(d, c.degree());
        return d;
    }

    std::string to_string() const {
        if (period == 1)
            return components.front().to_string("M");
        std::string out = "[";
        for (std::size_t i = 0; i < period; ++i) {
            if (i)
                out += " | ";
            out += components[i].to_string("M");
        }
        return out + "] mod " + std::to_string(period);
    }

    friend bool operator==(const QuasiPolynomial& a, const QuasiPolynomial& b) {
        return a.period == b.period && a.components == b.components;
    }
};

struct FitOptions {
    std::size_t max_period = 4;
    /// Minimum number of trailing entries per residue class that a fit must
    /// explain; a degree-d fit always needs at least d + 2 of them.
    std::size_t window = 3;
    std::size_t max_degree = 4;
};

namespace detail {

/// Interpolating polynomial through (xs[i], ys[i]).
inline RationalPolynomial interpolate(std::span<const Rational> xs, std::span<const Rational> ys) {
    RationalPolynomial out;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        RationalPolynomial basis = RationalPolynomial::constant(1);
        Rational denom = 1;
        for (std::size_t j = 0; j < xs.size(); ++j) {
            if (j == i)
                continue;
            basis = basis * RationalPolynomial::linear_root(xs[j]);
            denom *= xs[i] - xs[j];
        }
        out = out + Rational(ys[i] / denom) * basis;
    }
    return out;
}

/// Smallest-degree polynomial matching the trailing entries of one residue class.
inline std::optional<RationalPolynomial> fit_class(std::span<const Rational> ms, std::span<const Rational> vs,
                                                   const FitOptions& opt) {
    for (std::size_t d = 0; d <= opt.max_degree; ++d) {
        std::size_t need = std::max(opt.window, d + 2);
        if (vs.size() < need)
            return std::nullopt;
        std::vector<Rational> diff(vs.end() - static_cast<long>(need), vs.end());
        for (std::size_t level = 0; level < d; ++level)
            for (std::size_t i = 0; i + 1 < diff.size() - level; ++i)
                diff[i] = diff[i + 1] - diff[i];
        std::size_t left = need - d;
        bool constant = std::all_of(diff.begin(), diff.begin() + static_cast<long>(left),
                                    [&](const Rational& x) { return x == diff[0]; });
        if (!constant)
            continue;
        return interpolate(ms.subspan(ms.size() - d - 1), vs.subspan(vs.size() - d - 1));
    }
    return std::nullopt;
}

} // namespace detail

/// Eventual quasi-polynomial of a rank sequence (ranks[0] is M = 1).
///
/// Tries periods 1, 2, ... in order; within a period each residue class takes
/// the smallest degree whose finite differences are constant over its trailing
/// entries. Returns nullopt when no period up to max_period fits.
inline std::optional<QuasiPolynomial> fit_quasi_polynomial(std::span<const std::size_t> ranks,
                                                           const FitOptions& opt = {}) {
    for (std::size_t p = 1; p <= opt.max_period; ++p) {
        QuasiPolynomial qp;
        qp.period = p;
        bool ok = true;
        for (std::size_t c = 0; c < p && ok; ++c) {
            std::vector<Rational> ms, vs;
            for (std::size_t i = c; i < ranks.size(); i += p) {
                ms.emplace_back(static_cast<unsigned long>(i + 1));
                vs.emplace_back(static_cast<unsigned long>(ranks[i]));
            }
            auto poly = detail::fit_class(ms, vs, opt);
            if (!poly)
                ok = false;
            else
                qp.components.push_back(std::move(*poly));
        }
        if (!ok)
            continue;
        std::size_t onset = ranks.size() + 1;
        while (onset > 1 && qp(onset - 1) == Rational(static_cast<unsigned long>(ranks[onset - 2])))
            --onset;
        qp.onset = onset;
        return qp;
    }
    return std::nullopt;
}

inline std::optional<QuasiPolynomial> fit_quasi_polynomial(std::span<const std::size_t> ranks,
                                                           std::size_t max_period, std::size_t window) {
    FitOptions opt;
    opt.max_period = max_period;
    opt.window = window;
    return fit_quasi_polynomial(ranks, opt);
}

struct RankProfile {
    LinRecSequence seq;
    std::size_t mmax = 0;
    RankSequence ranks;
    std::vector<Integer> bounds;
    std::vector<std::size_t> transients;
    std::optional<QuasiPolynomial> fitted;
    Classification classification = Classification::unknown;
};

/// Multiplicity-aware bound for every M <= mmax. Empty when the sequence is
/// eventually zero.
inline std::vector<Integer> refined_bounds(const Recurrence& rec, std::size_t mmax) {
    std::size_t r = rec.stripped().order();
    std::vector<Integer> out;
    if (r == 0)
        return std::vector<Integer>(mmax, Integer(0));
    std::size_t k = distinct_roots(rec);
    for (std::size_t M = 1; M <= mmax; ++M)
        out.push_back(power_bound_refined(r, k, M));
    return out;
}

/// (rank s^M) for M = 1..mmax.
inline RankProfile rank_sequence(const LinRecSequence& seq, std::size_t mmax, const RankOptions& opts = {},
                                 const FitOptions& fit = {}) {
    if (mmax < 1)
        throw Error(Errc::invalid_argument, "mmax must be >= 1");
    RankProfile prof;
    prof.seq = seq;
    prof.mmax = mmax;
    prof.bounds = refined_bounds(seq.recurrence(), mmax);
    for (std::size_t M = 1; M <= mmax; ++M) {
        try {
            auto cert = rank_of_power(seq, M, opts);
            prof.ranks.push_back(cert.rank);
            prof.transients.push_back(cert.transient);
        } catch (const Error& e) {
            throw Error(e.code(), "at M = " + std::to_string(M) + ": " + e.what(), e.needed());
        }
    }
    prof.fitted = fit_quasi_polynomial(prof.ranks, fit);
    return prof;
}

struct GenericOptions {
    std::size_t trials = 3;
    /// Initial values are drawn uniformly from [-height, height].
    long height = 50;
    std::uint64_t seed = 0;
};

/// Estimate of the general rank sequence of a recurrence: the pointwise
/// maximum over `trials` random integer initial vectors. Cancellation among
/// exponential-polynomial coefficients has measure zero, so random initial
/// values realize the general sequence with overwhelming probability; the
/// default seed keeps results reproducible.
inline RankSequence generic_rank_sequence(const Recurrence& rec, std::size_t mmax, const GenericOptions& g = {},
                                          const RankOptions& opts = {}) {
    if (g.trials < 1)
        throw Error(Errc::invalid_argument, "trials must be >= 1");
    std::mt19937_64 rng(g.seed);
    std::uniform_int_distribution<long> dist(-g.height, g.height);
    RankSequence best(mmax, 0);
    for (std::size_t t = 0; t < g.trials; ++t) {
        std::vector<Rational> init(rec.order());
        bool nonzero = false;
        while (!nonzero) {
            for (auto& v : init) {
                v = dist(rng);
                nonzero = nonzero || v != 0;
            }
            if (init.empty())
                break;
        }
        LinRecSequence seq(rec, std::move(init));
        for (std::size_t M = 1; M <= mmax; ++M)
            best[M - 1] = std::max(best[M - 1], rank_of_power(seq, M, opts).rank);
    }
    return best;
}

/// general: ranks equal the generic sequence; particular: some rank falls below
/// it. A rank above the generic estimate means the estimate itself was wrong,
/// which is reported as unknown.
inline Classification classify(std::span<const std::size_t> ranks, std::span<const std::size_t> generic) {
    if (ranks.size() != generic.size())
        throw Error(Errc::length_mismatch, "rank sequence has " + std::to_string(ranks.size()) +
                                               " entries, generic has " + std::to_string(generic.size()));
    bool below = false, above = false;
    for (std::size_t i = 0; i < ranks.size(); ++i) {
        below = below || ranks[i] < generic[i];
        above = above || ranks[i] > generic[i];
    }
    if (below)
        return Classification::particular;
    return above ? Classification::unknown : Classification::general;
}

inline Classification classify(const RankProfile& profile, std::span<const std::size_t> generic) {
    return classify(profile.ranks, generic);
}

// ---------------------------------------------------------------------------
// Coefficient-space search

struct SearchConfig {
    std::size_t rank = 2;
    long coeff_lo = -3, coeff_hi = 3;
    /// Initial values for the generic sampler come from [-init_height, init_height].
    long init_height = 50;
    std::size_t mmax = 8;
    std::size_t trials = 3;
    std::uint64_t seed = 0;
    /// Tuples searched in addition to the box, e.g. rows known from elsewhere.
    std::vector<std::vector<long>> extra_tuples;
    /// Optional filter on coefficient tuples (c_{r-1}, ..., c_0).
    std::function<bool(std::span<const long>)> accept;
    /// Per tuple, this many random small initial vectors (entries in
    /// [-probe_height, probe_height]) are checked for particular sequences.
    std::size_t particular_probes = 0;
    long probe_height = 2;
    /// Cap on the total number of rank computations.
    std::size_t budget = 2'000'000;
    /// 0 = CRSEQ_THREADS or hardware concurrency.
    std::size_t threads = 0;
    RankOptions rank_options;
    FitOptions fit_options;
    /// Advisory progress callback (done, total); never affects results.
    std::function<void(std::size_t, std::size_t)> progress;
};

struct SearchRow {
    std::vector<long> coeffs; // first tuple (in search order) producing this row
    RankSequence ranks;
    std::optional<QuasiPolynomial> fit;
    Classification classification = Classification::general;
    /// Number of tuples whose sequence matched this row.
    std::size_t tuple_count = 0;
    /// ranks equal power_bound_refined(r, k, M) for some k and every M <= mmax.
    bool attains_bound = false;
};

struct SearchResult {
    std::vector<SearchRow> rows;
    std::size_t tuples = 0;
    std::size_t rank_computations = 0;
};

inline std::size_t worker_count(std::size_t requested) {
    if (requested)
        return requested;
    if (const char* env = std::getenv("CRSEQ_THREADS")) {
        long v = std::strtol(env, nullptr, 10);
        if (v > 0)
            return static_cast<std::size_t>(v);
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

inline Recurrence recurrence_of(std::span<const long> coeffs) {
    std::vector<Rational> c;
    for (long v : coeffs)
        c.emplace_back(v);
    return Recurrence(std::move(c));
}

inline bool attains_some_bound(std::size_t r, const RankSequence& ranks) {
    for (std::size_t k = 1; k <= r; ++k) {
        bool all = true;
        for (std::size_t M = 1; M <= ranks.size() && all; ++M)
            all = power_bound_refined(r, k, M) == static_cast<unsigned long>(ranks[M - 1]);
        if (all)
            return true;
    }
    return false;
}

/// Table order: by eventual degree, then leading coefficient, then the rank
/// sequence itself, then coefficients. Rows without a fit sort last.
inline bool row_less(const SearchRow& a, const SearchRow& b) {
    auto key_deg = [](const SearchRow& r) { return r.fit ? r.fit->degree() : 1'000'000L; };
    if (key_deg(a) != key_deg(b))
        return key_deg(a) < key_deg(b);
    if (a.fit && b.fit && a.fit->period == 1 && b.fit->period == 1) {
        const auto& la = a.fit->components.front();
        const auto& lb = b.fit->components.front();
        if (!la.is_zero() && !lb.is_zero() && la.leading() != lb.leading())
            return la.leading() < lb.leading();
    }
    if (a.ranks != b.ranks)
        return a.ranks < b.ranks;
    if (a.classification != b.classification)
        return a.classification < b.classification;
    return a.coeffs < b.coeffs;
}

} // namespace detail

/// All coefficient tuples of the box, lexicographic, with c_0 ≠ 0.
inline std::vector<std::vector<long>> enumerate_tuples(std::size_t r, long lo, long hi) {
    std::vector<std::vector<long>> out;
    if (r == 0 || lo > hi)
        return out;
    std::vector<long> cur(r, lo);
    while (true) {
        if (cur.back() != 0)
            out.push_back(cur);
        std::size_t i = r;
        while (i > 0 && cur[i - 1] == hi) {
            cur[i - 1] = lo;
            --i;
        }
        if (i == 0)
            break;
        ++cur[i - 1];
    }
    return out;
}

/// Enumerates integer recurrences of the given rank, computes their generic
/// rank sequences in parallel, and returns one row per distinct sequence.
/// Results depend only on the configuration (including the seed), never on
/// thread count or scheduling.
inline SearchResult search(const SearchConfig& cfg) {
    if (cfg.rank < 1)
        throw Error(Errc::invalid_argument, "rank must be >= 1");
    if (cfg.mmax < 1 || cfg.trials < 1)
        throw Error(Errc::invalid_argument, "mmax and trials must be >= 1");

    auto tuples = enumerate_tuples(cfg.rank, cfg.coeff_lo, cfg.coeff_hi);
    for (const auto& extra : cfg.extra_tuples) {
        if (extra.size() != cfg.rank)
            throw Error(Errc::invalid_argument, "extra tuple has wrong length");
        if (extra.back() == 0)
            throw Error(Errc::invalid_argument, "c0 must be nonzero");
        if (std::find(tuples.begin(), tuples.end(), extra) == tuples.end())
            tuples.push_back(extra);
    }
    if (cfg.accept)
        std::erase_if(tuples, [&](const std::vector<long>& t) { return !cfg.accept(t); });

    std::size_t per_tuple = (cfg.trials + cfg.particular_probes) * cfg.mmax;
    std::size_t cost = per_tuple * tuples.size();
    if (cost > cfg.budget)
        throw Error(Errc::budget_exceeded, std::to_string(cost) + " rank computations exceed budget " +
                                               std::to_string(cfg.budget));

    struct Outcome {
        RankSequence generic;
        std::vector<RankSequence> particular;
    };
    std::vector<Outcome> outcomes(tuples.size());
    std::atomic<std::size_t> next{0}, done{0};
    std::mutex mu;
    std::exception_ptr failure;

    auto work = [&] {
        while (true) {
            std::size_t i = next.fetch_add(1);
            if (i >= tuples.size())
                return;
            try {
                auto rec = detail::recurrence_of(tuples[i]);
                GenericOptions g;
                g.trials = cfg.trials;
                g.height = cfg.init_height;
                g.seed = detail::splitmix64(cfg.seed ^ detail::splitmix64(i));
                outcomes[i].generic = generic_rank_sequence(rec, cfg.mmax, g, cfg.rank_options);
                if (cfg.particular_probes) {
                    std::mt19937_64 rng(detail::splitmix64(g.seed + 1));
                    std::uniform_int_distribution<long> dist(-cfg.probe_height, cfg.probe_height);
                    for (std::size_t p = 0; p < cfg.particular_probes; ++p) {
                        std::vector<Rational> init(cfg.rank);
                        bool nonzero = false;
                        for (auto& v : init) {
                            v = dist(rng);
                            nonzero = nonzero || v != 0;
                        }
                        if (!nonzero)
                            continue;
                        LinRecSequence seq(rec, std::move(init));
                        RankSequence ranks;
                        for (std::size_t M = 1; M <= cfg.mmax; ++M)
                            ranks.push_back(rank_of_power(seq, M, cfg.rank_options).rank);
                        if (classify(ranks, outcomes[i].generic) == Classification::particular)
                            outcomes[i].particular.push_back(std::move(ranks));
                    }
                }
            } catch (...) {
                std::lock_guard lock(mu);
                if (!failure)
                    failure = std::current_exception();
                next = tuples.size();
                return;
            }
            std::size_t d = done.fetch_add(1) + 1;
            if (cfg.progress) {
                std::lock_guard lock(mu);
                cfg.progress(d, tuples.size());
            }
        }
    };

    std::size_t nthreads = std::min(worker_count(cfg.threads), std::max<std::size_t>(1, tuples.size()));
    std::vector<std::thread> pool;
    for (std::size_t t = 1; t < nthreads; ++t)
        pool.emplace_back(work);
    work();
    for (auto& th : pool)
        th.join();
    if (failure)
        std::rethrow_exception(failure);

    // Merge in tuple order so representatives do not depend on scheduling.
    std::map<std::pair<RankSequence, Classification>, SearchRow> merged;
    auto add = [&](const std::vector<long>& coeffs, const RankSequence& ranks, Classification cls) {
        auto [it, inserted] = merged.try_emplace({ranks, cls});
        SearchRow& row = it->second;
        if (inserted) {
            row.coeffs = coeffs;
            row.ranks = ranks;
            row.classification = cls;
            row.fit = fit_quasi_polynomial(ranks, cfg.fit_options);
            row.attains_bound = detail::attains_some_bound(cfg.rank, ranks);
        }
        ++row.tuple_count;
    };
    for (std::size_t i = 0; i < tuples.size(); ++i) {
        add(tuples[i], outcomes[i].generic, Classification::general);
        for (const auto& p : outcomes[i].particular)
            add(tuples[i], p, Classification::particular);
    }

    SearchResult result;
    result.tuples = tuples.size();
    result.rank_computations = cost;
    for (auto& [key, row] : merged)
        result.rows.push_back(std::move(row));
    std::sort(result.rows.begin(), result.rows.end(), detail::row_less);
    return result;
}

} // namespace crseq
