#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace lagcorr {

enum class ErrorKind {
    AmbientMismatch,
    ShapeMismatch,
    NotSymplectomorphism,
    NotLagrangian,
    EndpointMismatch,
    NotComposable,
    InvalidSpace,
    SignatureMismatch,
    DirectionMismatch,
    NotAStrip,
    NotEmbedded,
    UnsupportedTopology,
    SyntaxError,
    UnknownName,
    TypeMismatch,
};

std::string_view to_string(ErrorKind kind);

/// Base exception for every engine error. The kind is stable and is what the
/// CLI report prints; the message is free-form.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message)
        : std::runtime_error(message), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

}  // namespace lagcorr
