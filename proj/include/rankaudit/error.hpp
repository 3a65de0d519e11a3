#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace rankaudit {

enum class ErrorCode {
    parse_error,
    empty_graph,
    not_found,
    invalid_argument,
    convergence,
    degenerate_graph,
    invalid_score,
    out_of_bounds,
    incomplete_cache,
    unsupported_version,
    corrupt_cache,
    fingerprint_mismatch,
    io_error,
};

// Stable machine-readable name, used in API error bodies.
std::string_view to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message, std::string subject = {})
        : std::runtime_error(message), code_(code), subject_(std::move(subject)) {}

    ErrorCode code() const noexcept { return code_; }

    // The offending entity (node id, parameter name, file line...), may be empty.
    const std::string& subject() const noexcept { return subject_; }

private:
    ErrorCode code_;
    std::string subject_;
};

class ParseError : public Error {
public:
    ParseError(const std::string& message, std::size_t line)
        : Error(ErrorCode::parse_error,
                line > 0 ? "line " + std::to_string(line) + ": " + message : message,
                line > 0 ? std::to_string(line) : std::string{}),
          line_(line) {}

    // 1-based; 0 when the error is not tied to a line.
    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

class ConvergenceError : public Error {
public:
    ConvergenceError(const std::string& message, double residual, int iterations)
        : Error(ErrorCode::convergence, message), residual_(residual), iterations_(iterations) {}

    double residual() const noexcept { return residual_; }
    int iterations() const noexcept { return iterations_; }

private:
    double residual_;
    int iterations_;
};

} // namespace rankaudit
