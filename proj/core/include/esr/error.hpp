#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace esr {

enum class ErrorCode {
    InvalidParameter,
    InvalidRange,
    LengthMismatch,
    GridTooSmall,
    TruncationLoss,
    RepresentationMismatch,
    ZeroNorm,
    OutOfRange,
    ParseError,
    IndexBeyondTruncation,
    ZeroProbabilityOutcome,
    DetectionCertain,
    SelectionContainsQ0,
    BinGapDetected,
};

std::string_view to_string(ErrorCode code) noexcept;

// True for failures caused by malformed input rather than by the numerics.
bool is_input_error(ErrorCode code) noexcept;

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string &what);

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

[[noreturn]] void fail(ErrorCode code, const std::string &detail);

}  // namespace esr
