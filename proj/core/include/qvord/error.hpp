#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace qvord {

enum class ErrorKind {
    Parse,
    Value,
    Duplicate,
    EmptyInput,
    DegenerateCategories,
    DegenerateDistribution,
    TooFewPoints,
    TooLarge,
    Truncation,
};

/// Base of all library errors. `exit_code()` maps the kind onto the CLI
/// conventions: 2 for data errors, 3 for numeric/degenerate errors.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message)
        : std::runtime_error(message), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

    int exit_code() const noexcept {
        switch (kind_) {
        case ErrorKind::DegenerateCategories:
        case ErrorKind::DegenerateDistribution:
        case ErrorKind::Truncation:
            return 3;
        default:
            return 2;
        }
    }

private:
    ErrorKind kind_;
};

class ParseError : public Error {
public:
    ParseError(const std::string& message, std::size_t line)
        : Error(ErrorKind::Parse, "line " + std::to_string(line) + ": " + message),
          line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

class ValueError : public Error {
public:
    explicit ValueError(const std::string& message) : Error(ErrorKind::Value, message) {}
};

class DuplicateError : public Error {
public:
    explicit DuplicateError(const std::string& message)
        : Error(ErrorKind::Duplicate, message) {}
};

class EmptyInput : public Error {
public:
    explicit EmptyInput(const std::string& message)
        : Error(ErrorKind::EmptyInput, message) {}
};

class DegenerateCategories : public Error {
public:
    explicit DegenerateCategories(const std::string& message)
        : Error(ErrorKind::DegenerateCategories, message) {}
};

class DegenerateDistribution : public Error {
public:
    explicit DegenerateDistribution(const std::string& message)
        : Error(ErrorKind::DegenerateDistribution, message) {}
};

class TooFewPoints : public Error {
public:
    explicit TooFewPoints(const std::string& message)
        : Error(ErrorKind::TooFewPoints, message) {}
};

class TooLarge : public Error {
public:
    explicit TooLarge(const std::string& message) : Error(ErrorKind::TooLarge, message) {}
};

class TruncationError : public Error {
public:
    explicit TruncationError(const std::string& message)
        : Error(ErrorKind::Truncation, message) {}
};

} // namespace qvord
