#pragma once

#include <stdexcept>
#include <string>

namespace chainstab {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The surface model or a class refers to something that does not exist
/// (unknown curve, invalid component, malformed config value).
class ConfigurationError : public Error {
 public:
  using Error::Error;
};

/// Caller passed an argument outside the operation's domain.
class UsageError : public Error {
 public:
  using Error::Error;
};

/// A mathematical precondition (e.g. a genericity condition) does not hold.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// The configuration is valid but the operation does not cover it
/// (e.g. support constants with a D or E component).
class UnsupportedConfiguration : public Error {
 public:
  using Error::Error;
};

/// A postcondition that should be impossible to violate was violated.
class InternalError : public Error {
 public:
  using Error::Error;
};

}  // namespace chainstab
