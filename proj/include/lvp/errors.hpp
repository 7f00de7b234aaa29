#pragma once

#include <stdexcept>
#include <string>

namespace lvp {

// Base class for all errors raised by this library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Malformed or rejected input (CSV contents, bad configuration values).
class ParseError : public Error {
public:
    using Error::Error;
};

// Argument outside the mathematical domain of an operation.
class DomainError : public Error {
public:
    using Error::Error;
};

// Input too small or too sparse for the requested computation.
class InsufficientDataError : public Error {
public:
    using Error::Error;
};

}  // namespace lvp
