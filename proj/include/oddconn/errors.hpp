#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace oddconn {

/// Base class for all kernel errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Two values living on different charts were combined.
struct ChartMismatchError : Error {
    using Error::Error;
};

/// A component or image violates the required Grassmann parity.
struct ParityError : Error {
    using Error::Error;
};

/// Malformed expression or model text. Positions are 1-based.
struct ParseError : Error {
    std::size_t line;
    std::size_t column;

    ParseError(std::string msg, std::size_t line_, std::size_t column_)
        : Error(std::move(msg)), line(line_), column(column_) {}
};

/// Invalid input that is not a parse or parity problem (unknown coordinate,
/// missing image, non-invertible data, bad CLI argument, ...).
struct InputError : Error {
    using Error::Error;
};

} // namespace oddconn
