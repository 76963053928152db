#pragma once

#include <stdexcept>
#include <string>

namespace hyperlim {

// Malformed arguments or inputs that violate an operation's precondition.
class InputError : public std::invalid_argument {
public:
    explicit InputError(const std::string& msg) : std::invalid_argument(msg) {}
};

// Text-format parse failure; carries the 1-based line number.
class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t line, const std::string& msg)
        : std::runtime_error("line " + std::to_string(line) + ": " + msg), line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

// Zero degree where a positive one is required (isolated vertices, failing
// minimum-degree assumptions).
class DegeneracyError : public std::runtime_error {
public:
    DegeneracyError(std::size_t index, const std::string& msg)
        : std::runtime_error(msg), index_(index) {}

    std::size_t index() const noexcept { return index_; }

private:
    std::size_t index_;
};

// Exhaustive enumeration requested beyond the configured size cap.
class CapacityError : public std::runtime_error {
public:
    explicit CapacityError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace hyperlim
