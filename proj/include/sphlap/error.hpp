#pragma once

#include <stdexcept>
#include <string>

namespace sphlap {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Argument outside the mathematical domain (division by zero, p <= 0, n < -1).
class DomainError : public Error {
public:
    using Error::Error;
};

/// Index beyond a table's extent.
class RangeError : public Error {
public:
    using Error::Error;
};

/// An oracle refuses a point where its method is known to be inaccurate.
class UnsupportedError : public Error {
public:
    using Error::Error;
};

/// Internal self-check failed; indicates a bug rather than bad input.
class ConsistencyError : public Error {
public:
    using Error::Error;
};

class InsufficientDataError : public Error {
public:
    using Error::Error;
};

} // namespace sphlap
