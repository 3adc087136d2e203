#pragma once

#include <stdexcept>
#include <string>

namespace fsind {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A group parameter tuple violates the presentation constraints.
class InvalidSpec : public Error {
 public:
  using Error::Error;
};

/// A cyclotomic value expected to be a rational integer is not one.
class NotAnInteger : public Error {
 public:
  using Error::Error;
};

class NotDivisible : public Error {
 public:
  using Error::Error;
};

/// A brute-force structural computation disagrees with its closed form.
/// The closed forms are theorems, so this always indicates a bug.
class ClosedFormMismatch : public Error {
 public:
  using Error::Error;
};

/// The two brute-force double-indicator oracles disagree.
class OracleMismatch : public Error {
 public:
  using Error::Error;
};

class NotAbelian : public Error {
 public:
  using Error::Error;
};

class NotASubgroupCharacter : public Error {
 public:
  using Error::Error;
};

class CenterNotContained : public Error {
 public:
  using Error::Error;
};

class UnknownLabel : public Error {
 public:
  using Error::Error;
};

class Unsupported : public Error {
 public:
  using Error::Error;
};

/// Raised cooperatively by long computations when a resource guard expires.
class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

}  // namespace fsind
