#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace trustrecon {

/// Mathematical precondition violated (undefined cosine, divergent inverse, ...).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Invalid configuration value (SimConfig, StageConfig, ...).
class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Malformed argument to an operation (length mismatch, too few devices, ...).
class InputError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Structurally inconsistent data (mismatched key sets, asymmetric matrix, ...).
class DataError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Two agents' logs cannot be aligned.
class AlignmentError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Iterative numerical routine did not reach its tolerance.
class ConvergenceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Filesystem failure while emitting artifacts.
class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class ParseErrorKind {
    header,
    field_count,
    non_numeric,
    out_of_range,
    duplicate_step,
    missing_step,
};

const char* to_string(ParseErrorKind kind);

/// CSV parse failure. `row()` is the 1-based line number (the header is line 1).
class ParseError : public std::runtime_error {
public:
    ParseError(ParseErrorKind kind, std::size_t row, const std::string& reason);

    ParseErrorKind kind() const { return kind_; }
    std::size_t row() const { return row_; }

private:
    ParseErrorKind kind_;
    std::size_t row_;
};

}  // namespace trustrecon
