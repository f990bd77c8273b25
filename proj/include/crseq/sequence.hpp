#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "crseq/error.hpp"
#include "crseq/polynomial.hpp"
#include "crseq/rational.hpp"

namespace crseq {

/// s(n+r) = c_{r-1} s(n+r-1) + ... + c_1 s(n+1) + c_0 s(n).
///
/// Coefficients are stored highest shift first, (c_{r-1}, ..., c_0), which is
/// also the order used by every input and output format.
class Recurrence {
public:
    Recurrence() = default;
    explicit Recurrence(std::vector<Rational> coeffs) : c_(std::move(coeffs)) {}

    std::size_t order() const noexcept { return c_.size(); }
    const std::vector<Rational>& coeffs() const noexcept { return c_; }

    /// c_i, the multiplier of s(n+i).
    const Rational& shift_coeff(std::size_t i) const { return c_[c_.size() - 1 - i]; }

    /// c_0 ≠ 0 (or order 0). Ranks are only meaningful for recurrences in this form.
    bool is_strict() const { return c_.empty() || c_.back() != 0; }

    /// Number of vanishing low-shift coefficients c_0, c_1, ..., i.e. the power
    /// of x dividing the characteristic polynomial.
    std::size_t trailing_zeros() const {
        std::size_t m = 0;
        while (m < c_.size() && c_[c_.size() - 1 - m] == 0)
            ++m;
        return m;
    }

    /// The recurrence with the x^m factor removed. It holds from index m onward.
    Recurrence stripped() const {
        std::size_t m = trailing_zeros();
        return Recurrence(std::vector<Rational>(c_.begin(), c_.end() - static_cast<long>(m)));
    }

    /// s(n+r) - sum c_i s(n+i), evaluated at offset n.
    Rational residual(std::span<const Rational> terms, std::size_t n) const {
        std::size_t r = order();
        Rational acc = terms[n + r];
        for (std::size_t i = 0; i < r; ++i)
            acc -= shift_coeff(i) * terms[n + i];
        return acc;
    }

    friend bool operator==(const Recurrence&, const Recurrence&) = default;

private:
    std::vector<Rational> c_;
};

/// A recurrence together with its initial block. Terms past the initial block
/// are determined by the recurrence; extra initial terms (more than the order)
/// are taken as given, which models transients.
class LinRecSequence {
public:
    LinRecSequence() = default;
    LinRecSequence(Recurrence rec, std::vector<Rational> init, std::string label = {})
        : rec_(std::move(rec)), init_(std::move(init)), label_(std::move(label)) {
        if (init_.size() < rec_.order())
            throw Error(Errc::invalid_argument,
                        "need at least " + std::to_string(rec_.order()) + " initial terms, got " +
                            std::to_string(init_.size()));
    }

    const Recurrence& recurrence() const noexcept { return rec_; }
    const std::vector<Rational>& initial_terms() const noexcept { return init_; }
    const std::string& label() const noexcept { return label_; }

    /// Initial terms beyond the order.
    std::size_t extra_initial_terms() const noexcept { return init_.size() - rec_.order(); }

private:
    Recurrence rec_;
    std::vector<Rational> init_;
    std::string label_;
};

/// Appends terms to `terms` until it holds n entries.
inline void extend_terms(const LinRecSequence& seq, std::vector<Rational>& terms, std::size_t n) {
    const auto& init = seq.initial_terms();
    const auto& rec = seq.recurrence();
    std::size_t r = rec.order();
    terms.reserve(n);
    while (terms.size() < n) {
        std::size_t idx = terms.size();
        if (idx < init.size()) {
            terms.push_back(init[idx]);
            continue;
        }
        Rational next = 0;
        for (std::size_t i = 0; i < r; ++i) {
            const Rational& c = rec.shift_coeff(i);
            if (c != 0)
                next += c * terms[idx - r + i];
        }
        terms.push_back(std::move(next));
    }
}

inline std::vector<Rational> generate_terms(const LinRecSequence& seq, std::size_t n) {
    std::vector<Rational> terms;
    extend_terms(seq, terms, n);
    return terms;
}

/// x^r - (c_{r-1} x^{r-1} + ... + c_0)
inline RationalPolynomial char_poly(const Recurrence& rec) {
    std::size_t r = rec.order();
    std::vector<Rational> c(r + 1);
    c[r] = 1;
    for (std::size_t i = 0; i < r; ++i)
        c[i] = -rec.shift_coeff(i);
    return RationalPolynomial(std::move(c));
}

inline Recurrence recurrence_from_char_poly(const RationalPolynomial& p) {
    if (!p.is_monic())
        throw Error(Errc::not_monic, "characteristic polynomial must be monic, got " + p.to_string());
    if (p.degree() < 1)
        throw Error(Errc::invalid_argument, "characteristic polynomial must have degree >= 1");
    std::size_t r = static_cast<std::size_t>(p.degree());
    std::vector<Rational> c(r);
    for (std::size_t i = 0; i < r; ++i)
        c[r - 1 - i] = -p.coeff(i);
    return Recurrence(std::move(c));
}

/// Number of distinct roots of the characteristic polynomial, ignoring the
/// root 0 contributed by vanishing low-shift coefficients.
inline std::size_t distinct_roots(const Recurrence& rec) {
    auto stripped = rec.stripped();
    if (stripped.order() == 0)
        return 0;
    return distinct_root_count(char_poly(stripped));
}

/// Lazily extended, memoized stream of exact terms.
///
/// A stream owns its whole expression tree. Copying a stream deep-copies the
/// tree and the memoized prefix, so a stream is confined to one thread and
/// parallel workers each take their own copy.
class TermStream {
    struct Source {
        virtual ~Source() = default;
        virtual std::unique_ptr<Source> clone() const = 0;
        virtual void extend(std::vector<Rational>& terms, std::size_t n) = 0;
        virtual std::string describe() const = 0;
    };

public:
    static TermStream from_sequence(LinRecSequence seq);

    /// A finite list of terms; reading past its end is an error.
    static TermStream from_terms(std::vector<Rational> terms);

    static TermStream ones() {
        return from_sequence(LinRecSequence(Recurrence({Rational(1)}), {Rational(1)}, "ones"));
    }

    static TermStream product(TermStream a, TermStream b);
    static TermStream power(TermStream a, unsigned long M);

    TermStream(const TermStream& o) : src_(o.src_->clone()), terms_(o.terms_) {}
    TermStream(TermStream&&) noexcept = default;
    TermStream& operator=(const TermStream& o) {
        if (this != &o) {
            src_ = o.src_->clone();
            terms_ = o.terms_;
        }
        return *this;
    }
    TermStream& operator=(TermStream&&) noexcept = default;

    /// Ensures at least n terms are memoized and returns the first n.
    std::span<const Rational> prefix(std::size_t n) {
        if (terms_.size() < n)
            src_->extend(terms_, n);
        return std::span<const Rational>(terms_.data(), n);
    }

    const Rational& operator[](std::size_t i) { return prefix(i + 1)[i]; }

    std::size_t memoized() const noexcept { return terms_.size(); }
    std::string describe() const { return src_->describe(); }

private:
    explicit TermStream(std::unique_ptr<Source> s) : src_(std::move(s)) {}

    struct SequenceSource;
    struct ListSource;
    struct ProductSource;
    struct PowerSource;

    std::unique_ptr<Source> src_;
    std::vector<Rational> terms_;
};

struct TermStream::SequenceSource final : TermStream::Source {
    explicit SequenceSource(LinRecSequence s) : seq(std::move(s)) {}
    std::unique_ptr<Source> clone() const override { return std::make_unique<SequenceSource>(*this); }
    void extend(std::vector<Rational>& terms, std::size_t n) override { extend_terms(seq, terms, n); }
    std::string describe() const override {
        return seq.label().empty() ? "sequence" : seq.label();
    }
    LinRecSequence seq;
};

struct TermStream::ListSource final : TermStream::Source {
    explicit ListSource(std::vector<Rational> t) : list(std::move(t)) {}
    std::unique_ptr<Source> clone() const override { return std::make_unique<ListSource>(*this); }
    void extend(std::vector<Rational>& terms, std::size_t n) override {
        if (n > list.size())
            throw Error(Errc::too_few_terms, "finite stream has " + std::to_string(list.size()) +
                                                 " terms, requested " + std::to_string(n));
        terms.assign(list.begin(), list.begin() + static_cast<long>(n));
    }
    std::string describe() const override { return "list"; }
    std::vector<Rational> list;
};

struct TermStream::ProductSource final : TermStream::Source {
    ProductSource(TermStream x, TermStream y) : a(std::move(x)), b(std::move(y)) {}
    std::unique_ptr<Source> clone() const override { return std::make_unique<ProductSource>(*this); }
    void extend(std::vector<Rational>& terms, std::size_t n) override {
        auto pa = a.prefix(n);
        auto pb = b.prefix(n);
        for (std::size_t i = terms.size(); i < n; ++i)
            terms.push_back(pa[i] * pb[i]);
    }
    std::string describe() const override { return "(" + a.describe() + ")*(" + b.describe() + ")"; }
    TermStream a, b;
};

struct TermStream::PowerSource final : TermStream::Source {
    PowerSource(TermStream x, unsigned long m) : a(std::move(x)), M(m) {}
    std::unique_ptr<Source> clone() const override { return std::make_unique<PowerSource>(*this); }
    void extend(std::vector<Rational>& terms, std::size_t n) override {
        auto pa = a.prefix(n);
        for (std::size_t i = terms.size(); i < n; ++i)
            terms.push_back(pow(pa[i], M));
    }
    std::string describe() const override { return "(" + a.describe() + ")^" + std::to_string(M); }
    TermStream a;
    unsigned long M;
};

inline TermStream TermStream::from_sequence(LinRecSequence seq) {
    return TermStream(std::make_unique<SequenceSource>(std::move(seq)));
}

inline TermStream TermStream::from_terms(std::vector<Rational> terms) {
    return TermStream(std::make_unique<ListSource>(std::move(terms)));
}

inline TermStream TermStream::product(TermStream a, TermStream b) {
    return TermStream(std::make_unique<ProductSource>(std::move(a), std::move(b)));
}

inline TermStream TermStream::power(TermStream a, unsigned long M) {
    if (M < 1)
        throw Error(Errc::invalid_argument, "power exponent must be >= 1");
    return TermStream(std::make_unique<PowerSource>(std::move(a), M));
}

/// Termwise product with the first n terms materialized.
inline TermStream termwise_product(TermStream a, TermStream b, std::size_t n) {
    auto out = TermStream::product(std::move(a), std::move(b));
    out.prefix(n);
    return out;
}

inline TermStream termwise_power(TermStream a, unsigned long M, std::size_t n) {
    auto out = TermStream::power(std::move(a), M);
    out.prefix(n);
    return out;
}

} // namespace crseq
