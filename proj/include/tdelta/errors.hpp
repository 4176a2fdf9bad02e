#ifndef TDELTA_ERRORS_HPP
#define TDELTA_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace tdelta {

/// Base class for every numeric failure raised by the library.
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Laurent tail did not fall below tolerance before the truncation cap.
class UnresolvedSeries : public NumericError {
 public:
  using NumericError::NumericError;
};

/// A symbol returned NaN or infinity.
class EvaluationError : public NumericError {
 public:
  using NumericError::NumericError;
};

class ZeroOnCircle : public NumericError {
 public:
  using NumericError::NumericError;
};

class NonIntegerWinding : public NumericError {
 public:
  using NumericError::NumericError;
};

/// Raised by the Wiener-Hopf split when log a does not close up.
class NonzeroWinding : public NumericError {
 public:
  using NumericError::NumericError;
};

class CoefficientRangeExceeded : public NumericError {
 public:
  using NumericError::NumericError;
};

class SingularMatrix : public NumericError {
 public:
  using NumericError::NumericError;
};

class ZeroBandDeterminant : public NumericError {
 public:
  using NumericError::NumericError;
};

}  // namespace tdelta

#endif  // TDELTA_ERRORS_HPP
