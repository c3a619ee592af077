#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>

namespace bpscal {

enum class ErrorKind {
    DimensionMismatch,
    NonFinite,
    InvalidArgument,
    InteriorUnsupported,
    UnsupportedRepresentation,
    DegenerateSeminorm,
    PreconditionViolated,
    NoFiniteValue,
    CoveringViolated,
    DegenerateDirection,
    HypothesisFailed,
    LpFailure,
    SyntaxError,
    UnknownIdentifier,
    ArityError,
    EvalError,
    SchemaError,
    IoError
};

inline const char* to_string(ErrorKind k) {
    switch (k) {
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::NonFinite: return "NonFinite";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::InteriorUnsupported: return "InteriorUnsupported";
    case ErrorKind::UnsupportedRepresentation: return "UnsupportedRepresentation";
    case ErrorKind::DegenerateSeminorm: return "DegenerateSeminorm";
    case ErrorKind::PreconditionViolated: return "PreconditionViolated";
    case ErrorKind::NoFiniteValue: return "NoFiniteValue";
    case ErrorKind::CoveringViolated: return "CoveringViolated";
    case ErrorKind::DegenerateDirection: return "DegenerateDirection";
    case ErrorKind::HypothesisFailed: return "HypothesisFailed";
    case ErrorKind::LpFailure: return "LpFailure";
    case ErrorKind::SyntaxError: return "SyntaxError";
    case ErrorKind::UnknownIdentifier: return "UnknownIdentifier";
    case ErrorKind::ArityError: return "ArityError";
    case ErrorKind::EvalError: return "EvalError";
    case ErrorKind::SchemaError: return "SchemaError";
    case ErrorKind::IoError: return "IoError";
    }
    return "Unknown";
}

/// Base exception for every failure raised by the library.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

/// Parse/evaluation failure in an objective expression; `offset` is a byte offset into the source.
class ExprError : public Error {
public:
    ExprError(ErrorKind kind, std::size_t offset, const std::string& what)
        : Error(kind, what + " at offset " + std::to_string(offset)), offset_(offset), reason_(what) {}

    std::size_t offset() const noexcept { return offset_; }
    /// The message without the kind prefix or offset suffix.
    const std::string& reason() const noexcept { return reason_; }

private:
    std::size_t offset_;
    std::string reason_;
};

/// Problem-file validation failure; `pointer` is a JSON pointer to the offending node.
class SchemaError : public Error {
public:
    SchemaError(std::string pointer, const std::string& what)
        : Error(ErrorKind::SchemaError, (pointer.empty() ? std::string("/") : pointer) + ": " + what),
          pointer_(std::move(pointer)) {}

    const std::string& pointer() const noexcept { return pointer_; }

private:
    std::string pointer_;
};

inline void require(bool cond, ErrorKind kind, const std::string& msg) {
    if (!cond) throw Error(kind, msg);
}

} // namespace bpscal
