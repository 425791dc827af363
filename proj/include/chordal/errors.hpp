#pragma once

#include <cstdio>
#include <stdexcept>
#include <string>

namespace chordal {

/// Short rendering of a real for diagnostics ("%.6g").
inline std::string format_real(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Operands live in different numbers of complex variables.
class DimensionError : public Error {
public:
    using Error::Error;
};

/// An argument lies outside the domain of an operation (bad grid resolution,
/// cap radius outside (0, 1), alpha outside (-1, 1), ...).
class DomainError : public Error {
public:
    using Error::Error;
};

/// The contraction condition for a Neumann-series inverse does not hold.
/// The element may still be invertible; use is_invertible for yes/no answers.
class NotNeumannInvertible : public Error {
public:
    using Error::Error;
};

/// A fraction n/d could not be validated as a coprime factorization.
class CoprimenessError : public Error {
public:
    using Error::Error;
};

/// The nominal loop is not certifiably stabilized by the controller.
class StabilityError : public Error {
public:
    using Error::Error;
};

/// Malformed series / plant input.
class ParseError : public Error {
public:
    using Error::Error;
};

}  // namespace chordal
