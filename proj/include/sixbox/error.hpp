#pragma once

#include <stdexcept>
#include <string>

namespace sixbox {

// Base for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Hypothesis space is empty, malformed, or not a subset of 0..N.
class InvalidSpaceError : public Error {
 public:
  using Error::Error;
};

// An observation has zero probability under every hypothesis still in support.
class ImpossibleObservationError : public Error {
 public:
  using Error::Error;
};

// Bayes factor with a zero-likelihood denominator.
class UndefinedFactorError : public Error {
 public:
  using Error::Error;
};

// Argument outside the mathematical domain of an operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

class NumericError : public Error {
 public:
  using Error::Error;
};

// Monte Carlo combiner produced a value outside its declared codomain.
class PropagationError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

class SessionClosedError : public Error {
 public:
  using Error::Error;
};

class NotFoundError : public Error {
 public:
  using Error::Error;
};

}  // namespace sixbox
