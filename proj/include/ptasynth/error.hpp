#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ptasynth {

/// Raised by the model and property readers.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& msg, std::size_t line, std::size_t column)
        : std::runtime_error("line " + std::to_string(line) + ", column " +
                             std::to_string(column) + ": " + msg),
          line_(line), column_(column) {}

    std::size_t line() const { return line_; }
    std::size_t column() const { return column_; }

private:
    std::size_t line_;
    std::size_t column_;
};

/// An identifier that was never declared.
class UndeclaredError : public ParseError {
public:
    using ParseError::ParseError;
};

/// The input is well formed but outside what the requested analysis handles.
class UnsupportedError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A caller broke an operation's precondition.
class PreconditionError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

}  // namespace ptasynth
