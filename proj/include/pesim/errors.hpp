#pragma once

#include <stdexcept>
#include <string>

namespace pesim {

// Bad config file or physically inconsistent parameters (CLI exit code 2).
struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// Caller violated a precondition (dimension mismatch, bad argument).
struct UsageError : std::invalid_argument {
    explicit UsageError(const std::string& what) : std::invalid_argument(what) {}
};

// Iterative procedure failed to converge (CLI exit code 4).
struct NonConvergenceError : std::runtime_error {
    explicit NonConvergenceError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace pesim
