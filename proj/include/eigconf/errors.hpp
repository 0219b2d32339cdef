#pragma once

#include <stdexcept>
#include <string>

namespace eigconf {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operands that do not fit together (different variable tables, arity
/// mismatches, unknown variable names).
class StructuralError : public Error {
 public:
  using Error::Error;
};

/// Mathematically invalid input (division by zero, gcd of two zeros,
/// a polynomial that is not symmetric where symmetry is required).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Input that is well formed but violates a documented precondition
/// (non-symmetric matrix, non-monic characteristic polynomial).
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// A configured size cap was exceeded.
class ResourceError : public Error {
 public:
  using Error::Error;
};

/// Text or document input that cannot be parsed.
class ParseError : public Error {
 public:
  using Error::Error;
};

/// An internal consistency check failed; indicates a bug, never bad input.
class AssertionError : public Error {
 public:
  using Error::Error;
};

/// The two matrices share an eigenvalue. `witness` is the printed monic
/// gcd of the two characteristic polynomials.
class GenericityError : public Error {
 public:
  GenericityError(const std::string& witness, int witness_degree)
      : Error("matrices share an eigenvalue: gcd of characteristic polynomials is " + witness),
        witness_(witness),
        witness_degree_(witness_degree) {}

  const std::string& witness() const noexcept { return witness_; }
  int witness_degree() const noexcept { return witness_degree_; }

 private:
  std::string witness_;
  int witness_degree_;
};

}  // namespace eigconf
