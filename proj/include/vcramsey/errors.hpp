#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace vcramsey {

/// Bad arguments or violated preconditions.
class ValidationError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Malformed input file; carries the 1-based line number.
class ParseError : public ValidationError {
public:
    ParseError(std::size_t line, const std::string& what)
        : ValidationError("line " + std::to_string(line) + ": " + what), line_(line) {}
    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

/// Instance exceeds a fixed memory limit (e.g. vertex count of a dense coloring).
class CapacityError : public ValidationError {
public:
    using ValidationError::ValidationError;
};

/// An exact search ran out of its work allowance. Never replaced by a guess.
class BudgetExceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Recomputed state disagrees with stored state, or a certificate failed to check.
class IntegrityError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace vcramsey
