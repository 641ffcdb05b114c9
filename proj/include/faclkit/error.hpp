#pragma once

#include <stdexcept>
#include <string>

namespace faclkit {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Invalid configuration or argument (bad parameter ranges, unknown names).
class ValidationError : public Error {
public:
    using Error::Error;
};

/// Empty fields, non-finite input, or operands whose shapes disagree.
class DimensionError : public Error {
public:
    using Error::Error;
};

/// Input for which the requested quantity is undefined, e.g. an all-zero field in FCL.
class DegenerateInputError : public Error {
public:
    using Error::Error;
};

/// Malformed or truncated files and containers.
class FormatError : public Error {
public:
    using Error::Error;
};

/// Divergence, non-finite loss, or a failed gradient check.
class NumericalError : public Error {
public:
    using Error::Error;
};

} // namespace faclkit
