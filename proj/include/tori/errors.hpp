#pragma once

#include <stdexcept>
#include <string>

namespace tori {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input document: missing keys, wrong types, wrong shapes.
class SchemaError : public Error {
 public:
  using Error::Error;
};

// Well-formed input that violates a mathematical precondition.
class ValidationError : public Error {
 public:
  using Error::Error;
};

class NotFaithfulError : public ValidationError {
 public:
  NotFaithfulError() : ValidationError("not faithful") {}
};

class EnumerationCapError : public Error {
 public:
  using Error::Error;
};

class LatticeNotPreservedError : public ValidationError {
 public:
  LatticeNotPreservedError() : ValidationError("lattice not preserved") {}
};

// A computed quantity contradicts a theorem the code relies on.
class InternalError : public Error {
 public:
  using Error::Error;
};

}  // namespace tori
