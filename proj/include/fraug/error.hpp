#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace fraug {

/// Machine-readable failure category carried by every fraug::Error.
enum class ErrorCode {
    // core_fif
    NonMonotonicAbscissa,
    ScalingOutOfRange,
    SegmentTooShort,
    IndexOutOfRange,
    IterationLimitExceeded,
    AbscissaOutOfRange,
    EmptyGeneratedSet,
    // segmentation
    StrictModeIndivisible,
    SeriesTooShort,
    BoundaryMismatch,
    // analysis
    SeriesTooShortForHurst,
    ConstantSeries,
    SingularRegression,
    LengthMismatch,
    EmptyInput,
    // optimizer
    DuplicateParameterName,
    InvalidRange,
    InsufficientHistory,
    ObjectiveFailure,
    // strategies
    AllPointsEqual,
    // pipeline
    DegenerateInverse,
    DomainViolation,
    WindowTooLarge,
    NonFiniteLoss,
    WindowWidthMismatch,
    SingularSystem,
    // cli / io
    FactorMismatch,
    InvalidArgument,
    ParseError,
    IoError,
};

constexpr std::string_view to_string(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::NonMonotonicAbscissa: return "NonMonotonicAbscissa";
        case ErrorCode::ScalingOutOfRange: return "ScalingOutOfRange";
        case ErrorCode::SegmentTooShort: return "SegmentTooShort";
        case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
        case ErrorCode::IterationLimitExceeded: return "IterationLimitExceeded";
        case ErrorCode::AbscissaOutOfRange: return "AbscissaOutOfRange";
        case ErrorCode::EmptyGeneratedSet: return "EmptyGeneratedSet";
        case ErrorCode::StrictModeIndivisible: return "StrictModeIndivisible";
        case ErrorCode::SeriesTooShort: return "SeriesTooShort";
        case ErrorCode::BoundaryMismatch: return "BoundaryMismatch";
        case ErrorCode::SeriesTooShortForHurst: return "SeriesTooShortForHurst";
        case ErrorCode::ConstantSeries: return "ConstantSeries";
        case ErrorCode::SingularRegression: return "SingularRegression";
        case ErrorCode::LengthMismatch: return "LengthMismatch";
        case ErrorCode::EmptyInput: return "EmptyInput";
        case ErrorCode::DuplicateParameterName: return "DuplicateParameterName";
        case ErrorCode::InvalidRange: return "InvalidRange";
        case ErrorCode::InsufficientHistory: return "InsufficientHistory";
        case ErrorCode::ObjectiveFailure: return "ObjectiveFailure";
        case ErrorCode::AllPointsEqual: return "AllPointsEqual";
        case ErrorCode::DegenerateInverse: return "DegenerateInverse";
        case ErrorCode::DomainViolation: return "DomainViolation";
        case ErrorCode::WindowTooLarge: return "WindowTooLarge";
        case ErrorCode::NonFiniteLoss: return "NonFiniteLoss";
        case ErrorCode::WindowWidthMismatch: return "WindowWidthMismatch";
        case ErrorCode::SingularSystem: return "SingularSystem";
        case ErrorCode::FactorMismatch: return "FactorMismatch";
        case ErrorCode::InvalidArgument: return "InvalidArgument";
        case ErrorCode::ParseError: return "ParseError";
        case ErrorCode::IoError: return "IoError";
    }
    return "Unknown";
}

/// Exception type thrown by every fraug operation.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

    [[nodiscard]] ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& message) {
    throw Error(code, message);
}

}  // namespace fraug
