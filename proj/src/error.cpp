#include "rankaudit/error.hpp"

namespace rankaudit {

std::string_view to_string(ErrorCode code) noexcept {
    switch (code) {
    case ErrorCode::parse_error: return "parse_error";
    case ErrorCode::empty_graph: return "empty_graph";
    case ErrorCode::not_found: return "not_found";
    case ErrorCode::invalid_argument: return "invalid_argument";
    case ErrorCode::convergence: return "convergence";
    case ErrorCode::degenerate_graph: return "degenerate_graph";
    case ErrorCode::invalid_score: return "invalid_score";
    case ErrorCode::out_of_bounds: return "out_of_bounds";
    case ErrorCode::incomplete_cache: return "incomplete_cache";
    case ErrorCode::unsupported_version: return "unsupported_version";
    case ErrorCode::corrupt_cache: return "corrupt_cache";
    case ErrorCode::fingerprint_mismatch: return "fingerprint_mismatch";
    case ErrorCode::io_error: return "io_error";
    }
    return "unknown";
}

} // namespace rankaudit
