#ifndef QSH_ERRORS_HPP
#define QSH_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace qsh {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Bad user input to an operation (out-of-range coefficient, unusable profile, ...).
struct InvalidArgument : Error {
    using Error::Error;
};

// Config file problems. `line` is 0 when no line applies (missing key, ...).
struct ConfigError : Error {
    ConfigError(const std::string& msg, int line_number = 0) : Error(msg), line(line_number) {}
    int line;
};

struct IoError : Error {
    using Error::Error;
};

// Snapshot with bad magic/version or truncated payload.
struct FormatError : Error {
    using Error::Error;
};

// Field shapes disagree (snapshot grid vs config grid, mismatched operands).
struct ShapeMismatch : Error {
    using Error::Error;
};

// A step produced NaN/Inf; carries the last good time.
struct NonFiniteError : Error {
    NonFiniteError(const std::string& msg, double time) : Error(msg), t(time) {}
    double t;
};

}  // namespace qsh

#endif
