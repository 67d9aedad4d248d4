#pragma once

#include <stdexcept>
#include <string>

namespace catenoid {

// Stable error codes, surfaced verbatim by the CLI's structured output.
enum class errc {
    syntax_error,
    unknown_symbol,
    not_certified_positive,
    denominator_too_small,
    non_integrable,
    degenerate_params,
    incompatible_ratio,
    equal_planck,
    not_invertible,
    domain_error,
};

inline const char* errc_name(errc c) {
    switch (c) {
    case errc::syntax_error: return "SyntaxError";
    case errc::unknown_symbol: return "UnknownSymbol";
    case errc::not_certified_positive: return "NotCertifiedPositive";
    case errc::denominator_too_small: return "DenominatorTooSmall";
    case errc::non_integrable: return "NonIntegrable";
    case errc::degenerate_params: return "DegenerateParams";
    case errc::incompatible_ratio: return "IncompatibleRatio";
    case errc::equal_planck: return "EqualPlanck";
    case errc::not_invertible: return "NotInvertible";
    case errc::domain_error: return "DomainError";
    }
    return "Error";
}

class Error : public std::runtime_error {
public:
    Error(errc code, const std::string& what)
        : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

    errc code() const { return code_; }

private:
    errc code_;
};

// Parse errors carry the byte offset of the offending token.
class ParseError : public Error {
public:
    ParseError(errc code, const std::string& what, std::size_t offset)
        : Error(code, what + " at offset " + std::to_string(offset)), offset_(offset) {}

    std::size_t offset() const { return offset_; }

private:
    std::size_t offset_;
};

}  // namespace catenoid
