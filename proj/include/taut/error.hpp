#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace taut {

enum class ErrorKind {
    InvalidPartition,
    InvalidShape,
    IncomparableShapes,
    DivisionByZero,
    IncompatibleIndices,
    InvalidSubpartition,
    InvalidRange,
    PreconditionViolated,
    EnumerationBoundExceeded,
    InvalidVertex,
    InvalidArgument,
};

std::string_view to_string(ErrorKind kind);

/// All engine failures carry a kind so callers (the CLI in particular) can
/// map them onto stable exit codes without string matching.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

inline std::string_view to_string(ErrorKind kind) {
    switch (kind) {
    case ErrorKind::InvalidPartition: return "InvalidPartition";
    case ErrorKind::InvalidShape: return "InvalidShape";
    case ErrorKind::IncomparableShapes: return "IncomparableShapes";
    case ErrorKind::DivisionByZero: return "DivisionByZero";
    case ErrorKind::IncompatibleIndices: return "IncompatibleIndices";
    case ErrorKind::InvalidSubpartition: return "InvalidSubpartition";
    case ErrorKind::InvalidRange: return "InvalidRange";
    case ErrorKind::PreconditionViolated: return "PreconditionViolated";
    case ErrorKind::EnumerationBoundExceeded: return "EnumerationBoundExceeded";
    case ErrorKind::InvalidVertex: return "InvalidVertex";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    }
    return "Unknown";
}

} // namespace taut
