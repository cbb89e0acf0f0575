#pragma once

#include <stdexcept>
#include <string>

namespace dunkl {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

class IndexOutOfRange : public Error {
 public:
  using Error::Error;
};

/// A polynomial was not divisible by the requested linear form.
class NotDivisible : public Error {
 public:
  using Error::Error;
};

class InvalidRoot : public Error {
 public:
  using Error::Error;
};

/// Root data that does not describe a valid reflection-group setting.
class InvalidRootSystem : public Error {
 public:
  using Error::Error;
};

class GroupTooLarge : public Error {
 public:
  using Error::Error;
};

/// Exact integration is not available for this weight; use the Monte Carlo oracle.
class TierError : public Error {
 public:
  using Error::Error;
};

class DegenerateInput : public Error {
 public:
  using Error::Error;
};

/// Raised when an identity that holds by construction is violated.
class InternalInconsistency : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace dunkl
