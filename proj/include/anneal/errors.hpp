#pragma once

#include <stdexcept>
#include <string>

namespace anneal {

// User-facing configuration problem (bad flag value, mask length mismatch, ...).
struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// Malformed input file; message carries the file and line number.
struct ParseError : std::runtime_error {
    explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

// Problem too large for the requested method (brute force guard, DP memory budget).
struct SizeError : std::runtime_error {
    explicit SizeError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace anneal
