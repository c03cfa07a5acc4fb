#ifndef QTR_ERRORS_HPP
#define QTR_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace qtr {

/// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid physical or configuration parameter (bad dimension, nonpositive
/// mass, malformed config value, ...).
class ParameterError : public Error {
 public:
  using Error::Error;
};

/// |v| >= 1 where a subluminal velocity is required.
class SuperluminalError : public ParameterError {
 public:
  using ParameterError::ParameterError;
};

/// Operand dimensions do not match, or a requested dimension exceeds the
/// available coefficients of a series.
class ShapeError : public Error {
 public:
  using Error::Error;
};

/// The Fock truncation is too small for the requested amplitude; carries the
/// smallest dimension that satisfies the tail condition.
class TruncationError : public Error {
 public:
  TruncationError(const std::string& what, int required_dim)
      : Error(what), required_dim_(required_dim) {}
  int required_dim() const { return required_dim_; }

 private:
  int required_dim_;
};

/// Non-finite values where finite numerics are required.
class NumericError : public Error {
 public:
  using Error::Error;
};

/// Output file cannot be created or written.
class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace qtr

#endif  // QTR_ERRORS_HPP
