#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "crseq/berlekamp_massey.hpp"
#include "crseq/bounds.hpp"
#include "crseq/error.hpp"
#include "crseq/modular.hpp"
#include "crseq/rational.hpp"
#include "crseq/sequence.hpp"

namespace crseq {

enum class RankMethod {
    /// Berlekamp-Massey over several word-size primes, Chinese remaindering and
    /// rational reconstruction. The candidate is then verified exactly.
    multimodular,
    /// Berlekamp-Massey directly over Q.
    exact,
};

struct RankOptions {
    /// Terms held back from the fit and used only to validate the result.
    std::size_t guard = 10;
    RankMethod method = RankMethod::multimodular;
    /// Primes tried before falling back to the exact method.
    std::size_t max_primes = 512;
};

/// Minimal recurrence of a term list, in strict form (c_0 ≠ 0).
///
/// The recurrence holds exactly for every supplied index >= transient, the
/// rank x rank Hankel matrix of the terms starting at `transient` is
/// nonsingular (so no shorter recurrence fits), and the recurrence fails at
/// transient - 1. rank 0 means the terms are eventually zero.
struct RankCertificate {
    std::size_t rank = 0;
    Recurrence recurrence;
    std::size_t transient = 0;
    std::size_t terms_used = 0;
    std::size_t guard_validated = 0;
};

namespace detail {

/// Terms multiplied by the lcm of their denominators. Recurrences are
/// invariant under scaling, so the engine works over Z.
inline std::vector<Integer> scale_to_integers(std::span<const Rational> terms) {
    Integer den = 1;
    for (const auto& t : terms)
        if (t.get_den() != 1)
            den = lcm(den, t.get_den());
    std::vector<Integer> out;
    out.reserve(terms.size());
    for (const auto& t : terms)
        out.push_back(den == 1 ? t.get_num() : Integer(t.get_num() * (den / t.get_den())));
    return out;
}

/// Recurrence coefficients scaled to integers: den*s(n+r) = sum num[i]*s(n+i).
struct IntegerRecurrence {
    std::vector<Integer> num; // num[i] multiplies s(n+i)
    Integer den = 1;

    explicit IntegerRecurrence(const Recurrence& rec) {
        std::size_t r = rec.order();
        for (std::size_t i = 0; i < r; ++i)
            den = lcm(den, rec.shift_coeff(i).get_den());
        num.resize(r);
        for (std::size_t i = 0; i < r; ++i) {
            const Rational& c = rec.shift_coeff(i);
            num[i] = c.get_num() * (den / c.get_den());
        }
    }

    bool holds_at(std::span<const Integer> t, std::size_t n, Integer& acc) const {
        std::size_t r = num.size();
        acc = 0;
        for (std::size_t i = 0; i < r; ++i) {
            if (num[i] != 0)
                mpz_addmul(acc.get_mpz_t(), num[i].get_mpz_t(), t[n + i].get_mpz_t());
        }
        mpz_submul(acc.get_mpz_t(), den.get_mpz_t(), t[n + r].get_mpz_t());
        return acc == 0;
    }

    /// First offset n in [from, to) where the recurrence fails, if any.
    std::optional<std::size_t> first_failure(std::span<const Integer> t, std::size_t from,
                                             std::size_t to) const {
        Integer acc;
        for (std::size_t n = from; n < to; ++n)
            if (!holds_at(t, n, acc))
                return n;
        return std::nullopt;
    }
};

/// Connection polynomial (BM convention) to recurrence coefficients
/// (c_{L-1}, ..., c_0).
inline Recurrence recurrence_from_connection(const std::vector<Rational>& conn, std::size_t L) {
    std::vector<Rational> c(L);
    for (std::size_t i = 1; i <= L; ++i)
        c[i - 1] = -conn[i];
    return Recurrence(std::move(c));
}

inline Integer exact_det(std::vector<std::vector<Rational>> a) {
    std::size_t n = a.size();
    Rational det = 1;
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        while (piv < n && a[piv][col] == 0)
            ++piv;
        if (piv == n)
            return 0;
        if (piv != col) {
            std::swap(a[piv], a[col]);
            det = -det;
        }
        det *= a[col][col];
        for (std::size_t i = col + 1; i < n; ++i) {
            if (a[i][col] == 0)
                continue;
            Rational f = a[i][col] / a[col][col];
            for (std::size_t j = col; j < n; ++j)
                a[i][j] -= f * a[col][j];
        }
    }
    return det.get_num();
}

/// True when the r x r Hankel matrix of t starting at `offset` is nonsingular.
/// A nonzero determinant modulo any prime proves it; an exact determinant
/// settles the case where several primes all report zero.
inline bool hankel_nonsingular(std::span<const Integer> t, std::size_t offset, std::size_t r) {
    if (r == 0)
        return true;
    for (std::size_t pi = 0; pi < 4; ++pi) {
        std::uint64_t p = modular::prime(pi);
        std::vector<std::uint64_t> red(2 * r - 1);
        for (std::size_t i = 0; i + 1 < 2 * r; ++i)
            red[i] = modular::reduce(t[offset + i], p);
        std::vector<std::uint64_t> m(r * r);
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = 0; j < r; ++j)
                m[i * r + j] = red[i + j];
        if (modular::det_mod(std::move(m), r, p) != 0)
            return true;
    }
    std::vector<std::vector<Rational>> a(r, std::vector<Rational>(r));
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < r; ++j)
            a[i][j] = t[offset + i + j];
    return exact_det(std::move(a)) != 0;
}

inline void require_window(std::size_t L, std::size_t window) {
    if (2 * L > window)
        throw Error(Errc::insufficient_terms,
                    "a recurrence of order " + std::to_string(L) + " needs a fit window of " +
                        std::to_string(2 * L) + " terms, have " + std::to_string(window),
                    2 * L - window);
}

/// Exact Berlekamp-Massey over Q on the fit window.
inline Recurrence annihilator_exact(std::span<const Integer> t, std::size_t window) {
    std::vector<Rational> q(t.begin(), t.begin() + static_cast<long>(window));
    auto reg = berlekamp_massey(RationalField{}, std::span<const Rational>(q));
    require_window(reg.length, window);
    return recurrence_from_connection(reg.connection, reg.length);
}

/// Multimodular Berlekamp-Massey. Returns a recurrence verified exactly on the
/// fit window, or nullopt when the prime budget runs out.
inline std::optional<Recurrence> annihilator_multimodular(std::span<const Integer> t, std::size_t window,
                                                          std::size_t max_primes) {
    std::size_t best_L = 0;
    bool started = false;
    std::optional<modular::CrtAccumulator> crt;
    std::vector<Integer> last_int;
    std::vector<Rational> last_rat;
    std::vector<std::uint64_t> red(window);

    auto try_candidate = [&](const std::vector<Rational>& conn_tail) -> std::optional<Recurrence> {
        std::vector<Rational> conn(best_L + 1);
        conn[0] = 1;
        for (std::size_t i = 0; i < best_L; ++i)
            conn[i + 1] = conn_tail[i];
        auto rec = recurrence_from_connection(conn, best_L);
        IntegerRecurrence irec(rec);
        if (irec.first_failure(t, 0, window - best_L))
            return std::nullopt;
        return rec;
    };

    for (std::size_t pi = 0; pi < max_primes; ++pi) {
        std::uint64_t p = modular::prime(pi);
        for (std::size_t i = 0; i < window; ++i)
            red[i] = modular::reduce(t[i], p);
        PrimeField f{p};
        auto reg = berlekamp_massey(f, std::span<const std::uint64_t>(red));
        if (!started || reg.length > best_L) {
            // A larger complexity means every earlier prime was unlucky.
            started = true;
            best_L = reg.length;
            require_window(best_L, window);
            crt.emplace(best_L);
            last_int.clear();
            last_rat.clear();
        } else if (reg.length < best_L) {
            continue;
        }
        if (best_L == 0)
            return Recurrence{};
        std::vector<std::uint64_t> res(reg.connection.begin() + 1, reg.connection.end());
        crt->add(res, p);

        const auto& vals = crt->values();
        const auto& mod = crt->modulus();
        std::vector<Integer> lifted(best_L);
        for (std::size_t i = 0; i < best_L; ++i)
            lifted[i] = modular::symmetric_lift(vals[i], mod);
        if (lifted == last_int) {
            std::vector<Rational> as_rat(lifted.begin(), lifted.end());
            if (auto rec = try_candidate(as_rat))
                return rec;
        }
        last_int = std::move(lifted);

        std::vector<Rational> recon;
        recon.reserve(best_L);
        for (std::size_t i = 0; i < best_L; ++i) {
            auto q = modular::rational_reconstruct(vals[i], mod);
            if (!q)
                break;
            recon.push_back(*q);
        }
        if (recon.size() == best_L) {
            bool all_integer = std::all_of(recon.begin(), recon.end(), [](const Rational& q) { return is_integer(q); });
            if (recon == last_rat && !all_integer) {
                if (auto rec = try_candidate(recon))
                    return rec;
            }
            last_rat = std::move(recon);
        } else {
            last_rat.clear();
        }
    }
    return std::nullopt;
}

/// Minimality of an annihilator found on the fit window: the stripped
/// recurrence's Hankel matrix is nonsingular and the transient cannot shrink.
inline bool is_minimal(std::span<const Integer> t, const Recurrence& full) {
    std::size_t m = full.trailing_zeros();
    Recurrence q = full.stripped();
    if (!hankel_nonsingular(t, m, q.order()))
        return false;
    Integer acc;
    return m == 0 || !IntegerRecurrence(q).holds_at(t, m - 1, acc);
}

/// Validates the stripped recurrence on the guard terms and packages the result.
inline RankCertificate certify(std::span<const Integer> t, const Recurrence& full, std::size_t window,
                               std::size_t guard) {
    std::size_t N = t.size();
    std::size_t m = full.trailing_zeros();
    Recurrence q = full.stripped();
    std::size_t r = q.order();
    IntegerRecurrence iq(q);

    // Offsets whose target index lies past the fit window.
    std::size_t from = std::max(m, window >= r ? window - r : 0);
    if (auto bad = iq.first_failure(t, from, N - r))
        throw Error(Errc::validation_failed,
                    "recurrence of order " + std::to_string(r) + " fits " + std::to_string(window) +
                        " terms but fails at index " + std::to_string(*bad + r) + "; supply more terms");

    RankCertificate cert;
    cert.rank = r;
    cert.recurrence = std::move(q);
    cert.transient = m;
    cert.terms_used = N;
    cert.guard_validated = guard;
    return cert;
}

} // namespace detail

/// Minimal strict-form recurrence of `terms`.
///
/// The last `guard` terms are withheld from the fit and only used for
/// validation. Throws InsufficientTerms (with needed() set) when the fit window
/// is shorter than twice the order found, and ValidationFailed when the fitted
/// recurrence breaks on a guard term.
inline RankCertificate minimal_recurrence(std::span<const Rational> terms, std::size_t guard,
                                          const RankOptions& opts = {}) {
    std::size_t N = terms.size();
    if (N < guard + 2)
        throw Error(Errc::insufficient_terms,
                    "need at least " + std::to_string(guard + 2) + " terms with guard " + std::to_string(guard),
                    guard + 2 - N);
    std::size_t window = N - guard;
    auto t = detail::scale_to_integers(terms);

    if (opts.method == RankMethod::multimodular) {
        auto full = detail::annihilator_multimodular(t, window, opts.max_primes);
        if (full && detail::is_minimal(t, *full))
            return detail::certify(t, *full, window, guard);
    }
    auto full = detail::annihilator_exact(t, window);
    if (!detail::is_minimal(t, full))
        throw Error(Errc::validation_failed, "exact annihilator failed its minimality certificate");
    return detail::certify(t, full, window, guard);
}

inline RankCertificate minimal_recurrence(std::span<const Rational> terms) {
    return minimal_recurrence(terms, RankOptions{}.guard);
}

/// Fits a stream whose eventual rank is at most `bound` and whose transient is
/// at most `allowance`. Doubles the window once on a window-size failure.
inline RankCertificate rank_of_stream(TermStream& stream, std::size_t bound, std::size_t allowance,
                                      const RankOptions& opts = {}) {
    std::size_t n = 2 * (bound + allowance) + opts.guard;
    n = std::max(n, opts.guard + 2);
    try {
        return minimal_recurrence(stream.prefix(n), opts.guard, opts);
    } catch (const Error& e) {
        if (e.code() != Errc::insufficient_terms && e.code() != Errc::validation_failed)
            throw;
    }
    return minimal_recurrence(stream.prefix(2 * n), opts.guard, opts);
}

namespace detail {

inline std::size_t to_size(const Integer& z) {
    if (!z.fits_ulong_p())
        throw Error(Errc::too_large, "bound " + z.get_str() + " does not fit in a machine word");
    return z.get_ui();
}

/// (eventual order, distinct roots, transient allowance) of a sequence.
struct Shape {
    std::size_t r, k, allowance;
};

inline Shape shape_of(const LinRecSequence& seq) {
    const auto& rec = seq.recurrence();
    return {rec.stripped().order(), distinct_roots(rec), seq.extra_initial_terms() + rec.trailing_zeros()};
}

} // namespace detail

/// Rank of (s(n)^M). The window is sized from the multiplicity-aware power bound.
inline RankCertificate rank_of_power(const LinRecSequence& seq, unsigned long M, const RankOptions& opts = {}) {
    if (M < 1)
        throw Error(Errc::invalid_argument, "M must be >= 1");
    auto sh = detail::shape_of(seq);
    std::size_t bound = sh.r == 0 ? 0 : detail::to_size(power_bound_refined(sh.r, sh.k, M));
    auto stream = TermStream::power(TermStream::from_sequence(seq), M);
    return rank_of_stream(stream, bound, sh.allowance, opts);
}

/// Rank of the termwise product (a(n) b(n)).
inline RankCertificate rank_of_product(const LinRecSequence& a, const LinRecSequence& b,
                                       const RankOptions& opts = {}) {
    auto sa = detail::shape_of(a);
    auto sb = detail::shape_of(b);
    std::size_t bound = (sa.r == 0 || sb.r == 0) ? 0 : detail::to_size(product_rank_bound(sa.r, sa.k, sb.r, sb.k));
    auto stream = TermStream::product(TermStream::from_sequence(a), TermStream::from_sequence(b));
    return rank_of_stream(stream, bound, std::max(sa.allowance, sb.allowance), opts);
}

/// det of the M x M matrix with (i, j) entry terms[i + j] (0-based).
inline Rational hankel_determinant(std::span<const Rational> terms, std::size_t M) {
    if (M < 1)
        throw Error(Errc::invalid_argument, "M must be >= 1");
    if (terms.size() < 2 * M - 1)
        throw Error(Errc::too_few_terms,
                    "need " + std::to_string(2 * M - 1) + " terms, have " + std::to_string(terms.size()));
    std::vector<std::vector<Rational>> a(M, std::vector<Rational>(M));
    for (std::size_t i = 0; i < M; ++i)
        for (std::size_t j = 0; j < M; ++j)
            a[i][j] = terms[i + j];
    // Scale rows to integers so exact_det can return the numerator.
    Rational scale = 1;
    for (auto& row : a) {
        Integer den = 1;
        for (const auto& x : row)
            den = lcm(den, x.get_den());
        for (auto& x : row)
            x *= den;
        scale /= den;
    }
    return Rational(detail::exact_det(std::move(a))) * scale;
}

} // namespace crseq
