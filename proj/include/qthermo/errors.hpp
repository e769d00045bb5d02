#pragma once

#include <stdexcept>
#include <string>

namespace qthermo {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NotHermitian : public Error {
 public:
  using Error::Error;
};

/// A scalar function was asked to act outside its domain (e.g. ln of a
/// nonpositive eigenvalue).
class DomainError : public Error {
 public:
  using Error::Error;
};

class BadFactorCount : public Error {
 public:
  using Error::Error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

class NotPositiveDefinite : public Error {
 public:
  using Error::Error;
};

class StepTooLarge : public Error {
 public:
  using Error::Error;
};

/// D(rho||sigma) is infinite: rho has weight where sigma vanishes.
class SupportMismatch : public Error {
 public:
  using Error::Error;
};

class InvalidSpec : public Error {
 public:
  using Error::Error;
};

class InvalidState : public Error {
 public:
  using Error::Error;
};

/// Internal consistency check failed (e.g. first-law residual too large).
class NumericalBreakdown : public Error {
 public:
  using Error::Error;
};

}  // namespace qthermo
