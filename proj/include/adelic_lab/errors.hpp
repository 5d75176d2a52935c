#pragma once

#include <stdexcept>
#include <string>

namespace adelic_lab {

/// Malformed text input. CLI exit code 2.
struct ParseError : std::runtime_error {
    explicit ParseError(const std::string& msg) : std::runtime_error(msg) {}
    ParseError(const std::string& msg, std::size_t pos)
        : std::runtime_error(msg + " (at column " + std::to_string(pos + 1) + ")") {}
};

/// Violated operation precondition. CLI exit code 3.
struct PreconditionError : std::runtime_error {
    explicit PreconditionError(const std::string& msg) : std::runtime_error(msg) {}
};

/// An enumeration exceeded its configured cap. CLI exit code 4.
struct CapOverflow : std::runtime_error {
    explicit CapOverflow(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace adelic_lab
