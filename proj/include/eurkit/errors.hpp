#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace eurkit {

enum class ErrorCode {
    ZeroNorm,
    GridTooNarrow,
    InvalidGrid,
    InvalidSpec,
    InvalidState,
    NotNormalized,
    Undersampled,
    NotPrime,
    BinTooFine,
    TailNotConverged,
    DimensionMismatch,
    InvalidAlpha,
    InvalidS,
    NotConjugate,
    InvalidOverlap,
    VariantInapplicable,
    SupportBoundary,
    DegenerateParallel,
    IncompatibleState,
    NotUnitary,
    GridMismatch,
    ParseError,
    IoError,
};

std::string_view error_name(ErrorCode code);

// Every failure in the library surfaces as this exception; the code lets
// callers (and the CLI exit-code mapping) distinguish the cases.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message);

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

[[noreturn]] void fail(ErrorCode code, const std::string& message);

}  // namespace eurkit
