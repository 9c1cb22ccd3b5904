#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace sfk {

// Root of every error raised by the library. Callers that only need to
// distinguish "library rejected the input" from other failures catch this.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ModeMismatch : public Error {
 public:
  using Error::Error;
};

// Shape or generator-count mismatch between operands.
class ShapeError : public Error {
 public:
  using Error::Error;
};

// An element that must be inverted has zero body.
class ZeroBody : public Error {
 public:
  using Error::Error;
};

class DomainError : public Error {
 public:
  using Error::Error;
};

// Exact mode cannot represent the result (e.g. an irrational square root).
class ExactnessError : public Error {
 public:
  using Error::Error;
};

class ParityError : public Error {
 public:
  using Error::Error;
};

class DeterminantError : public Error {
 public:
  using Error::Error;
};

class MembershipError : public Error {
 public:
  using Error::Error;
};

class PreconditionError : public Error {
 public:
  using Error::Error;
};

class SingularRoot : public Error {
 public:
  using Error::Error;
};

class NumericalError : public Error {
 public:
  using Error::Error;
};

// The first matrix of a pair is central (+I or -I); no triangular normal form.
class CentralError : public Error {
 public:
  using Error::Error;
};

// The pair shares an eigenvector in a way that rules out the triangular shape.
class ReducibleError : public Error {
 public:
  using Error::Error;
};

class InsufficientSamples : public Error {
 public:
  using Error::Error;
};

class SyntaxError : public Error {
 public:
  SyntaxError(const std::string& what, std::size_t position)
      : Error(what + " at index " + std::to_string(position)), position_(position) {}

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

}  // namespace sfk
