// fireline - error types shared across modules
#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace fireline {

// Syntax error in an expression or scenario document; pos is a byte offset
// into the offending text.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& msg, std::size_t pos)
        : std::runtime_error(msg + " (at offset " + std::to_string(pos) + ")"), pos_(pos) {}

    std::size_t pos() const noexcept { return pos_; }

private:
    std::size_t pos_;
};

// Expression evaluated where the value or a derivative is undefined:
// abs at its kink, sqrt of a non-positive argument, division by zero.
class EvalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Numerical failure of the model: non-positive speed, degenerate metric,
// non-finite state.
class NumericError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Scenario file failed validation.
class ScenarioError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace fireline
