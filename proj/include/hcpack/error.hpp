#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace hcpack {

enum class ErrorCode {
    UnknownLattice,
    IncommensurateDims,
    InvalidArgument,
    PhaseOutOfRange,
    MalformedInput,
    DimensionMismatch,
    IllegalInput,
    NonUniformDegree,
    UnsupportedLattice,
    TooLarge,
    NotMaximal,
    NotFlippable,
    InsufficientSizes,
    Undecidable,
};

constexpr std::string_view to_string(ErrorCode code) {
    switch (code) {
        case ErrorCode::UnknownLattice: return "UnknownLattice";
        case ErrorCode::IncommensurateDims: return "IncommensurateDims";
        case ErrorCode::InvalidArgument: return "InvalidArgument";
        case ErrorCode::PhaseOutOfRange: return "PhaseOutOfRange";
        case ErrorCode::MalformedInput: return "MalformedInput";
        case ErrorCode::DimensionMismatch: return "DimensionMismatch";
        case ErrorCode::IllegalInput: return "IllegalInput";
        case ErrorCode::NonUniformDegree: return "NonUniformDegree";
        case ErrorCode::UnsupportedLattice: return "UnsupportedLattice";
        case ErrorCode::TooLarge: return "TooLarge";
        case ErrorCode::NotMaximal: return "NotMaximal";
        case ErrorCode::NotFlippable: return "NotFlippable";
        case ErrorCode::InsufficientSizes: return "InsufficientSizes";
        case ErrorCode::Undecidable: return "Undecidable";
    }
    return "Unknown";
}

/// Single exception type for the library; `code()` tells callers (and the
/// CLI exit-code mapping) which contract was violated.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

    [[nodiscard]] ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

}  // namespace hcpack
