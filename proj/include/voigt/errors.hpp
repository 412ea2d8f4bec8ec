#pragma once

#include <stdexcept>
#include <string>

namespace voigt {

class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Invalid or inconsistent configuration (CLI exit code 1).
class ConfigError : public Error {
  public:
    using Error::Error;
};

/// File format or filesystem failures.
class IoError : public Error {
  public:
    using Error::Error;
};

/// Non-finite data or numerical instability of the discretization.
class NumericsError : public Error {
  public:
    using Error::Error;
};

}  // namespace voigt
