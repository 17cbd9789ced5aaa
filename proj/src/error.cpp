#include "filiform/error.hpp"

namespace filiform {

const char* error_name(ErrorCode code) {
    switch (code) {
        case ErrorCode::InvalidTruncation: return "invalid-truncation";
        case ErrorCode::InvalidRescale: return "invalid-rescale";
        case ErrorCode::WindowError: return "window-error";
        case ErrorCode::UnsupportedDegree: return "unsupported-degree";
        case ErrorCode::NotACocycle: return "not-a-cocycle";
        case ErrorCode::ContradictoryFamily: return "contradictory-family";
        case ErrorCode::OutOfRange: return "out-of-range";
        case ErrorCode::Obstructed: return "obstructed";
        case ErrorCode::InvalidCompensator: return "invalid-compensator";
        case ErrorCode::DepthExceeded: return "depth-exceeded";
        case ErrorCode::InvalidArgument: return "invalid-argument";
        case ErrorCode::ParseError: return "parse-error";
    }
    return "unknown";
}

}  // namespace filiform
