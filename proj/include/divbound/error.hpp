#pragma once

#include <stdexcept>
#include <string>

namespace divbound {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A parameter lies outside the admissible domain of an operation.
class DomainError : public Error {
public:
    using Error::Error;
};

// An integrand or objective produced a non-finite value.
class EvaluationError : public Error {
public:
    using Error::Error;
};

// Quadrature could not reach the requested tolerance.
class AccuracyError : public Error {
public:
    AccuracyError(const std::string& what, double achieved)
        : Error(what), achieved_(achieved) {}
    double achieved() const noexcept { return achieved_; }

private:
    double achieved_;
};

// Root finder was handed an interval without a sign change.
class BracketError : public Error {
public:
    using Error::Error;
};

// A target value is not attainable; carries the attainable interval.
class RangeError : public Error {
public:
    RangeError(const std::string& what, double lo, double hi)
        : Error(what), lo_(lo), hi_(hi) {}
    double lo() const noexcept { return lo_; }
    double hi() const noexcept { return hi_; }

private:
    double lo_;
    double hi_;
};

// Malformed input text (distribution files, target specs).
class ParseError : public Error {
public:
    ParseError(const std::string& what, int line = 0)
        : Error(line > 0 ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}
    int line() const noexcept { return line_; }

private:
    int line_;
};

}  // namespace divbound
