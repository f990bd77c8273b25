#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace crseq {

enum class Errc {
    invalid_argument,
    parse_error,
    both_zero,
    zero_polynomial,
    not_monic,
    insufficient_terms,
    validation_failed,
    too_few_terms,
    k_greater_than_r,
    too_large,
    length_mismatch,
    invalid_relation,
    zero_root,
    budget_exceeded,
};

inline const char* errc_name(Errc e) {
    switch (e) {
    case Errc::invalid_argument: return "InvalidArgument";
    case Errc::parse_error: return "ParseError";
    case Errc::both_zero: return "BothZero";
    case Errc::zero_polynomial: return "ZeroPolynomial";
    case Errc::not_monic: return "NotMonic";
    case Errc::insufficient_terms: return "InsufficientTerms";
    case Errc::validation_failed: return "ValidationFailed";
    case Errc::too_few_terms: return "TooFewTerms";
    case Errc::k_greater_than_r: return "KGreaterThanR";
    case Errc::too_large: return "TooLarge";
    case Errc::length_mismatch: return "LengthMismatch";
    case Errc::invalid_relation: return "InvalidRelation";
    case Errc::zero_root: return "ZeroRoot";
    case Errc::budget_exceeded: return "BudgetExceeded";
    }
    return "Unknown";
}

/// Every failure in the library is reported as a crseq::Error carrying a code.
/// For Errc::insufficient_terms, `needed()` is the number of additional terms
/// the caller should supply.
class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& what, std::size_t needed = 0)
        : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code),
          needed_(needed) {}

    Errc code() const noexcept { return code_; }
    std::size_t needed() const noexcept { return needed_; }

private:
    Errc code_;
    std::size_t needed_;
};

} // namespace crseq
