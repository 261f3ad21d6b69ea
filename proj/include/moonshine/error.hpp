#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace moonshine {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A series was asked for a term at or beyond its validity order.
class PrecisionError : public Error {
public:
    using Error::Error;
};

/// Two series with different validity orders were compared strictly.
class OrderMismatchError : public Error {
public:
    using Error::Error;
};

class NotInvertibleError : public Error {
public:
    using Error::Error;
};

class NotRationalError : public Error {
public:
    using Error::Error;
};

/// Malformed text input. `position()` is a 0-based offset into the input.
class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t position)
        : Error(what + " (at position " + std::to_string(position) + ")"), position_(position) {}

    std::size_t position() const noexcept { return position_; }

private:
    std::size_t position_;
};

/// A value parsed fine but breaks a domain invariant (degree, multiplicities, ...).
class ValidationError : public Error {
public:
    using Error::Error;
};

class NotFoundError : public Error {
public:
    using Error::Error;
};

/// An internal consistency check failed. Should never happen on good inputs.
class StructuralError : public Error {
public:
    using Error::Error;
};

/// A numeric evaluation could not reach the requested accuracy.
class EvaluationError : public Error {
public:
    using Error::Error;
};

}  // namespace moonshine
