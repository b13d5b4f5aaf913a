#include "lagcorr/error.hpp"

namespace lagcorr {

std::string_view to_string(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::AmbientMismatch: return "AmbientMismatch";
        case ErrorKind::ShapeMismatch: return "ShapeMismatch";
        case ErrorKind::NotSymplectomorphism: return "NotSymplectomorphism";
        case ErrorKind::NotLagrangian: return "NotLagrangian";
        case ErrorKind::EndpointMismatch: return "EndpointMismatch";
        case ErrorKind::NotComposable: return "NotComposable";
        case ErrorKind::InvalidSpace: return "InvalidSpace";
        case ErrorKind::SignatureMismatch: return "SignatureMismatch";
        case ErrorKind::DirectionMismatch: return "DirectionMismatch";
        case ErrorKind::NotAStrip: return "NotAStrip";
        case ErrorKind::NotEmbedded: return "NotEmbedded";
        case ErrorKind::UnsupportedTopology: return "UnsupportedTopology";
        case ErrorKind::SyntaxError: return "SyntaxError";
        case ErrorKind::UnknownName: return "UnknownName";
        case ErrorKind::TypeMismatch: return "TypeMismatch";
    }
    return "Unknown";
}

}  // namespace lagcorr
