#pragma once

#include <stdexcept>
#include <string>

namespace sdl {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Argument outside the domain of a function (r <= 0, origin point, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Incompatible mesh / weight / topology / experiment settings.
class ConfigurationError : public Error {
 public:
  using Error::Error;
};

/// Graph could not be assembled into a usable form (disconnected pieces).
class AssemblyError : public Error {
 public:
  using Error::Error;
};

/// Solver failure, degenerate denominators, violated post-conditions.
class NumericalError : public Error {
 public:
  using Error::Error;
};

/// Point where a closed-form field (e.g. the drift) is not available.
class UnsupportedPointError : public Error {
 public:
  using Error::Error;
};

/// Monte Carlo run produced no usable events.
class InsufficientDataError : public Error {
 public:
  using Error::Error;
};

}  // namespace sdl
