#pragma once

#include <stdexcept>
#include <string>

namespace drl {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Invalid problem description, data primitive, or argument domain.
class InvalidInput : public Error {
public:
    using Error::Error;
};

/// Quadrature could not reach its tolerance inside the configured budgets.
class QuadratureError : public Error {
public:
    using Error::Error;
};

/// Too few or unusable points for a fit.
class FitError : public Error {
public:
    using Error::Error;
};

} // namespace drl
