#pragma once

#include <stdexcept>
#include <string>

namespace cavlase {

// Bad user input: malformed config, unknown keys, invalid parameter values.
struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

// Structurally valid input outside the domain an operation supports
// (wrong coupling regime, on-cut evaluation without a side, horizon violation).
struct RegimeError : std::runtime_error {
    explicit RegimeError(const std::string& msg) : std::runtime_error(msg) {}
};

// A numeric routine failed to reach its tolerance or overflowed.
struct NumericError : std::runtime_error {
    explicit NumericError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace cavlase
