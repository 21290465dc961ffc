#include "esr/error.hpp"

namespace esr {

std::string_view to_string(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::InvalidParameter: return "InvalidParameter";
        case ErrorCode::InvalidRange: return "InvalidRange";
        case ErrorCode::LengthMismatch: return "LengthMismatch";
        case ErrorCode::GridTooSmall: return "GridTooSmall";
        case ErrorCode::TruncationLoss: return "TruncationLoss";
        case ErrorCode::RepresentationMismatch: return "RepresentationMismatch";
        case ErrorCode::ZeroNorm: return "ZeroNorm";
        case ErrorCode::OutOfRange: return "OutOfRange";
        case ErrorCode::ParseError: return "ParseError";
        case ErrorCode::IndexBeyondTruncation: return "IndexBeyondTruncation";
        case ErrorCode::ZeroProbabilityOutcome: return "ZeroProbabilityOutcome";
        case ErrorCode::DetectionCertain: return "DetectionCertain";
        case ErrorCode::SelectionContainsQ0: return "SelectionContainsQ0";
        case ErrorCode::BinGapDetected: return "BinGapDetected";
    }
    return "Unknown";
}

bool is_input_error(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::InvalidParameter:
        case ErrorCode::InvalidRange:
        case ErrorCode::LengthMismatch:
        case ErrorCode::RepresentationMismatch:
        case ErrorCode::OutOfRange:
        case ErrorCode::ParseError:
        case ErrorCode::IndexBeyondTruncation:
        case ErrorCode::SelectionContainsQ0:
        case ErrorCode::BinGapDetected:
            return true;
        default:
            return false;
    }
}

Error::Error(ErrorCode code, const std::string &what)
    : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

void fail(ErrorCode code, const std::string &detail) { throw Error(code, detail); }

}  // namespace esr
