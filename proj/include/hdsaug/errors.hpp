#pragma once

#include <stdexcept>
#include <string>

namespace hdsaug {

class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Malformed input file (bad JSON line, unreadable file, ...).
class ParseError : public Error {
public:
    using Error::Error;
};

// Structurally valid input violating a domain invariant.
class ValidationError : public Error {
public:
    using Error::Error;
};

// Generation or embedding provider failure (network, cache miss in replay
// mode, output rejected after retries).
class ProviderError : public Error {
public:
    using Error::Error;
};

// Bad experiment configuration (missing paths, missing credentials, ...).
class ConfigError : public Error {
public:
    using Error::Error;
};

// Numerical failure inside a solver (singular system, degenerate input).
class NumericError : public Error {
public:
    using Error::Error;
};

} // namespace hdsaug
