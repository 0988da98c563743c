#pragma once

#include <stdexcept>
#include <string>

namespace fatpoints {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed or inconsistent input (bad dimensions, duplicate points, mixed fields).
class InvalidInput : public Error {
 public:
  using Error::Error;
};

/// Prime-field computation at a degree t with p <= t.
class UnsupportedCharacteristic : public Error {
 public:
  using Error::Error;
};

/// A bound that holds unconditionally was exceeded; indicates a bug.
class InternalInvariantViolation : public Error {
 public:
  using Error::Error;
};

/// A closed-form regularity formula was requested outside its hypotheses.
class HypothesisViolated : public Error {
 public:
  using Error::Error;
};

/// A seeded generator could not meet its genericity predicate.
class GenerationFailure : public Error {
 public:
  using Error::Error;
};

}  // namespace fatpoints
