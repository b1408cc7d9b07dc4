#pragma once

#include <stdexcept>
#include <string>

namespace jmg {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Binary operation on elements of two different algebras.
class AlgebraMismatch : public Error {
 public:
  using Error::Error;
};

// Argument outside the domain of an operation, e.g. ln of an element that
// is not in the interior of the cone.
class DomainError : public Error {
 public:
  using Error::Error;
};

// Eigen-solver failure or a non-finite intermediate.
class NumericalError : public Error {
 public:
  using Error::Error;
};

// Instance data violating a builder precondition.
class InvalidInstance : public Error {
 public:
  using Error::Error;
};

// Malformed instance file. The message starts with the offending field path.
class SchemaError : public Error {
 public:
  using Error::Error;
};

}  // namespace jmg
