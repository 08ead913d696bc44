#pragma once

#include <stdexcept>
#include <string>

namespace sgsim {

/// Base class for all library errors. The CLI maps subclasses to exit codes.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed input text. Carries a 1-based line number when known.
class ParseError : public Error {
public:
    ParseError(const std::string& message, int line = 0)
        : Error(line > 0 ? "line " + std::to_string(line) + ": " + message : message),
          line_(line) {}

    int line() const { return line_; }

private:
    int line_ = 0;
};

/// Structurally valid input that violates a model invariant.
class ValidationError : public Error {
public:
    using Error::Error;
};

/// A requested construction or solve has no feasible answer.
class InfeasibleError : public Error {
public:
    using Error::Error;
};

/// Numerical breakdown (singular systems, solver failure).
class NumericalError : public Error {
public:
    using Error::Error;
};

} // namespace sgsim
