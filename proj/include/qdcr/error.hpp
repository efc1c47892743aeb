#pragma once

#include <stdexcept>
#include <string>

namespace qdcr {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Input labels or a series violate admissibility (triangle rules, level cutoff).
class InadmissibleError : public Error {
 public:
  using Error::Error;
};

/// A negative power of a vanishing cyclotomic factor was projected.
class PoleError : public InadmissibleError {
 public:
  using InadmissibleError::InadmissibleError;
};

/// Checked 64-bit exponent arithmetic would wrap.
class OverflowError : public Error {
 public:
  using Error::Error;
};

/// Malformed JSON input (DCR dumps, triangulations).
class ParseError : public Error {
 public:
  using Error::Error;
};

/// A floating-point projection produced inf or NaN.
class NonFiniteError : public Error {
 public:
  using Error::Error;
};

}  // namespace qdcr
