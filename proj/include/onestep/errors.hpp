#pragma once

#include <stdexcept>
#include <string>

namespace onestep {

/// Base class for all errors raised by this library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Two operands do not live on the same grid / atom set.
class ShapeError : public Error {
public:
  using Error::Error;
};

/// An argument lies outside the admissible range (epsilon outside [0,1],
/// empty sample, degenerate path, ...).
class DomainError : public Error {
public:
  using Error::Error;
};

/// Config file or CLI argument problems. Messages carry "file:line:" where
/// a source location is known.
class ConfigError : public Error {
public:
  using Error::Error;
};

/// Filesystem failures while reading or writing artifacts.
class IoError : public Error {
public:
  using Error::Error;
};

} // namespace onestep
