#pragma once

#include <stdexcept>
#include <string>

namespace altsing {

// Base class for all errors thrown by this library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input text. Positions are 1-based.
class ParseError : public Error {
 public:
  ParseError(const std::string& msg, int line, int col)
      : Error("parse error at " + std::to_string(line) + ":" + std::to_string(col) + ": " + msg),
        line(line),
        col(col) {}
  int line;
  int col;
};

// Operands live in different rings or have incompatible sizes.
class RingMismatch : public Error {
 public:
  using Error::Error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

// Grade preconditions violated (d > e in a contraction, odd grade in a
// divided power, wrong polynomial degree, ...).
class GradeError : public Error {
 public:
  using Error::Error;
};

class SingularMatrix : public Error {
 public:
  using Error::Error;
};

class NonExactDivision : public Error {
 public:
  using Error::Error;
};

// A bounded search over the rationals ran out of candidates. `bound` is the
// largest coordinate magnitude that was tried.
class NoSingularLineFound : public Error {
 public:
  explicit NoSingularLineFound(int bound)
      : Error("no singular line found with coordinates in {-" + std::to_string(bound) + ".." +
              std::to_string(bound) + "}"),
        bound(bound) {}
  int bound;
};

class DimensionTooSmall : public Error {
 public:
  using Error::Error;
};

class NotBinomialDimension : public Error {
 public:
  using Error::Error;
};

class Degenerate : public Error {
 public:
  using Error::Error;
};

class No2SingularSubspace : public Error {
 public:
  using Error::Error;
};

// An exhaustive enumeration would exceed the configured search budget.
class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

// An internal consistency check failed; indicates a bug, not bad input.
class InternalProportionalityViolation : public Error {
 public:
  using Error::Error;
};

}  // namespace altsing
