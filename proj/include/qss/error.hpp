#pragma once

#include <stdexcept>
#include <string>

namespace qss {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Modulus is not an odd prime, or exceeds the configured bound.
class PrimeError : public Error {
 public:
  using Error::Error;
};

/// The supplied quadratic has a root in F_p.
class ReducibleError : public Error {
 public:
  using Error::Error;
};

/// Operands belong to different fields (or carry unreduced coordinates).
class ContextError : public Error {
 public:
  using Error::Error;
};

class RangeError : public Error {
 public:
  using Error::Error;
};

/// a + a^p landed outside F_p. Only a field-arithmetic bug can cause this.
class TraceNotInBaseField : public Error {
 public:
  using Error::Error;
};

class NormalizationError : public Error {
 public:
  using Error::Error;
};

/// Key recovery was requested on a round that failed the consistency test.
class DiscardedRunError : public Error {
 public:
  using Error::Error;
};

/// A replayed worked example diverged from its reference values.
class GoldenFixtureError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace qss
