#ifndef INFECT_ERROR_HPP
#define INFECT_ERROR_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace infect {

enum class ErrorKind {
    NegativeWeight,
    InvalidWeight,
    IndexOutOfRange,
    DimensionMismatch,
    ParseError,
    MissingHeader,
    InvalidParams,
    InvalidConfig,
    DanglingNode,
    NonpositiveSeverity,
    ZeroSeverity,
    NonFiniteSeverity,
    ZeroVector,
    TooLarge,
    NoConvergence,
    NonStochastic,
    DegenerateStationary,
    Io,
};

constexpr std::string_view to_string(ErrorKind kind) noexcept {
    switch (kind) {
    case ErrorKind::NegativeWeight: return "NegativeWeight";
    case ErrorKind::InvalidWeight: return "InvalidWeight";
    case ErrorKind::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::MissingHeader: return "MissingHeader";
    case ErrorKind::InvalidParams: return "InvalidParams";
    case ErrorKind::InvalidConfig: return "InvalidConfig";
    case ErrorKind::DanglingNode: return "DanglingNode";
    case ErrorKind::NonpositiveSeverity: return "NonpositiveSeverity";
    case ErrorKind::ZeroSeverity: return "ZeroSeverity";
    case ErrorKind::NonFiniteSeverity: return "NonFiniteSeverity";
    case ErrorKind::ZeroVector: return "ZeroVector";
    case ErrorKind::TooLarge: return "TooLarge";
    case ErrorKind::NoConvergence: return "NoConvergence";
    case ErrorKind::NonStochastic: return "NonStochastic";
    case ErrorKind::DegenerateStationary: return "DegenerateStationary";
    case ErrorKind::Io: return "Io";
    }
    return "Unknown";
}

/// Exception carrying a machine-checkable kind alongside the message.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string &message)
        : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

} // namespace infect

#endif
