#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ubnet {

// Coarse error categories, mapped to CLI exit codes (1 usage, 2 input,
// 3 computation) and printed on stderr in machine-parsable form.
enum class ErrorCategory { usage, input, computation };

class Error : public std::runtime_error {
public:
    Error(ErrorCategory category, const std::string& what)
        : std::runtime_error(what), category_(category) {}

    ErrorCategory category() const { return category_; }

private:
    ErrorCategory category_;
};

class NotFoundError : public Error {
public:
    explicit NotFoundError(const std::string& what)
        : Error(ErrorCategory::computation, what) {}
};

class InvalidArgumentError : public Error {
public:
    explicit InvalidArgumentError(const std::string& what)
        : Error(ErrorCategory::computation, what) {}
};

// Density or averages requested on a graph where the denominator is empty.
class UndefinedValueError : public Error {
public:
    explicit UndefinedValueError(const std::string& what)
        : Error(ErrorCategory::computation, what) {}
};

class ParseError : public Error {
public:
    ParseError(std::size_t line, const std::string& what)
        : Error(ErrorCategory::input,
                "line " + std::to_string(line) + ": " + what),
          line_(line) {}

    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

class IoError : public Error {
public:
    explicit IoError(const std::string& what)
        : Error(ErrorCategory::input, what) {}
};

class EmptyGraphError : public Error {
public:
    explicit EmptyGraphError(const std::string& what)
        : Error(ErrorCategory::input, what) {}
};

class InvalidPartitionError : public Error {
public:
    explicit InvalidPartitionError(const std::string& what)
        : Error(ErrorCategory::computation, what) {}
};

class DegenerateFitError : public Error {
public:
    explicit DegenerateFitError(const std::string& what)
        : Error(ErrorCategory::computation, what) {}
};

class ConvergenceError : public Error {
public:
    explicit ConvergenceError(const std::string& what)
        : Error(ErrorCategory::computation, what) {}
};

class InvalidComparisonError : public Error {
public:
    explicit InvalidComparisonError(const std::string& what)
        : Error(ErrorCategory::computation, what) {}
};

inline const char* category_name(ErrorCategory c) {
    switch (c) {
        case ErrorCategory::usage: return "usage";
        case ErrorCategory::input: return "input";
        case ErrorCategory::computation: return "computation";
    }
    return "unknown";
}

inline int category_exit_code(ErrorCategory c) {
    switch (c) {
        case ErrorCategory::usage: return 1;
        case ErrorCategory::input: return 2;
        case ErrorCategory::computation: return 3;
    }
    return 3;
}

}  // namespace ubnet
