#pragma once

#include <stdexcept>
#include <string>

namespace aeroarm {

/// Base class for all errors raised by the library.
class SimError : public std::runtime_error {
public:
    explicit SimError(const std::string& what) : std::runtime_error(what) {}
};

class NotSkewSymmetric : public SimError {
public:
    using SimError::SimError;
};

class DegenerateRotation : public SimError {
public:
    using SimError::SimError;
};

class SingularGains : public SimError {
public:
    using SimError::SimError;
};

class UnreachableTarget : public SimError {
public:
    using SimError::SimError;
};

class DegenerateTarget : public SimError {
public:
    using SimError::SimError;
};

/// Config text could not be parsed at all. Carries the source location.
class ParseError : public SimError {
public:
    ParseError(const std::string& what, int line, int column)
        : SimError(what + " (line " + std::to_string(line) + ", column " +
                   std::to_string(column) + ")"),
          line_(line),
          column_(column) {}

    int line() const { return line_; }
    int column() const { return column_; }

private:
    int line_;
    int column_;
};

/// Config parsed but violates an invariant; the message names it.
class ValidationError : public SimError {
public:
    using SimError::SimError;
};

class NumericalDivergence : public SimError {
public:
    using SimError::SimError;
};

class IoError : public SimError {
public:
    using SimError::SimError;
};

class NoContact : public SimError {
public:
    using SimError::SimError;
};

}  // namespace aeroarm
