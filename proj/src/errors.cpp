#include "eurkit/errors.hpp"

namespace eurkit {

std::string_view error_name(ErrorCode code) {
    switch (code) {
        case ErrorCode::ZeroNorm: return "ZeroNorm";
        case ErrorCode::GridTooNarrow: return "GridTooNarrow";
        case ErrorCode::InvalidGrid: return "InvalidGrid";
        case ErrorCode::InvalidSpec: return "InvalidSpec";
        case ErrorCode::InvalidState: return "InvalidState";
        case ErrorCode::NotNormalized: return "NotNormalized";
        case ErrorCode::Undersampled: return "Undersampled";
        case ErrorCode::NotPrime: return "NotPrime";
        case ErrorCode::BinTooFine: return "BinTooFine";
        case ErrorCode::TailNotConverged: return "TailNotConverged";
        case ErrorCode::DimensionMismatch: return "DimensionMismatch";
        case ErrorCode::InvalidAlpha: return "InvalidAlpha";
        case ErrorCode::InvalidS: return "InvalidS";
        case ErrorCode::NotConjugate: return "NotConjugate";
        case ErrorCode::InvalidOverlap: return "InvalidOverlap";
        case ErrorCode::VariantInapplicable: return "VariantInapplicable";
        case ErrorCode::SupportBoundary: return "SupportBoundary";
        case ErrorCode::DegenerateParallel: return "DegenerateParallel";
        case ErrorCode::IncompatibleState: return "IncompatibleState";
        case ErrorCode::NotUnitary: return "NotUnitary";
        case ErrorCode::GridMismatch: return "GridMismatch";
        case ErrorCode::ParseError: return "ParseError";
        case ErrorCode::IoError: return "IoError";
    }
    return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(error_name(code)) + ": " + message), code_(code) {}

void fail(ErrorCode code, const std::string& message) { throw Error(code, message); }

}  // namespace eurkit
