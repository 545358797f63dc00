#pragma once

#include <stdexcept>
#include <string>

namespace cohrank {

/// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A parameter lies outside the domain of the operation (alpha > 1, k >= d, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

class DimensionError : public Error {
 public:
  using Error::Error;
};

/// Input matrix fails a density-matrix or Hermiticity check.
class InvalidStateError : public Error {
 public:
  using Error::Error;
};

class NotMaximallyCorrelatedError : public Error {
 public:
  using Error::Error;
};

/// Malformed JSON or a document that does not match the expected schema.
class ParseError : public Error {
 public:
  using Error::Error;
};

/// A well-posed query whose answer is "no such construction exists".
class InfeasibleError : public Error {
 public:
  InfeasibleError(const std::string& what, double boundary = 0.0)
      : Error(what), boundary_(boundary) {}
  double boundary() const noexcept { return boundary_; }

 private:
  double boundary_;
};

}  // namespace cohrank
