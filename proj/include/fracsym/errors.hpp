#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace fracsym {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Syntax error with the byte offset of the offending position.
struct ParseError : Error {
    std::size_t offset;
    ParseError(const std::string& msg, std::size_t off)
        : Error(msg + " (at offset " + std::to_string(off) + ")"), offset(off) {}
};

/// Unbound variable or domain violation during numeric evaluation.
struct EvalError : Error {
    using Error::Error;
};

struct DiffError : Error {
    using Error::Error;
};

/// Expression is not representable as a jet polynomial.
struct ConversionError : Error {
    using Error::Error;
};

/// A total derivative would leave the supported jet variable list.
struct OrderOverflowError : Error {
    using Error::Error;
};

/// Precondition violation on a numeric operator or group action.
struct DomainError : Error {
    using Error::Error;
};

}  // namespace fracsym
