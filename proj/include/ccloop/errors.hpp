#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace ccloop {

// Base of every error the library throws. Callers that only need a message
// can catch this; the subclasses carry the structured context.
class LoopError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NotLatinSquare : public LoopError {
 public:
  NotLatinSquare(bool in_row, int index, long long value)
      : LoopError(std::string(in_row ? "row " : "column ") + std::to_string(index) +
                  " repeats value " + std::to_string(value)),
        in_row(in_row), index(index), value(value) {}
  bool in_row;
  int index;
  long long value;
};

class NoIdentity : public LoopError {
 public:
  explicit NoIdentity(int witness)
      : LoopError("element 0 is not a two-sided identity (witness " +
                  std::to_string(witness) + ")"),
        witness(witness) {}
  int witness;
};

class OutOfRange : public LoopError {
 public:
  OutOfRange(int row, int col, long long value)
      : LoopError("entry (" + std::to_string(row) + "," + std::to_string(col) +
                  ") = " + std::to_string(value) + " is out of range"),
        row(row), col(col), value(value) {}
  int row, col;
  long long value;
};

class ParseError : public LoopError {
 public:
  ParseError(std::size_t line, std::size_t column, const std::string& what)
      : LoopError("line " + std::to_string(line) + ", column " + std::to_string(column) +
                  ": " + what),
        line(line), column(column) {}
  std::size_t line, column;
};

class SyntaxError : public LoopError {
 public:
  SyntaxError(std::size_t position, std::vector<std::string> expected)
      : LoopError(format(position, expected)), position(position), expected(std::move(expected)) {}
  std::size_t position;
  std::vector<std::string> expected;

 private:
  static std::string format(std::size_t pos, const std::vector<std::string>& exp) {
    std::string s = "syntax error at position " + std::to_string(pos) + ", expected one of:";
    for (const auto& e : exp) s += " " + e;
    return s;
  }
};

class TooManyVariables : public LoopError {
 public:
  using LoopError::LoopError;
};

class NotPowerAssociative : public LoopError {
 public:
  explicit NotPowerAssociative(int element)
      : LoopError("element " + std::to_string(element) + " is not power-associative"),
        element(element) {}
  int element;
};

class OrderTooLarge : public LoopError {
 public:
  OrderTooLarge(int order, int bound)
      : LoopError("order " + std::to_string(order) + " exceeds the bound " + std::to_string(bound)) {}
};

class NotSubloop : public LoopError {
 public:
  using LoopError::LoopError;
};

class NotNormal : public LoopError {
 public:
  NotNormal(int x, int y)
      : LoopError("coset multiplication is not well defined: products of (" + std::to_string(x) +
                  "," + std::to_string(y) + ") land in different cosets"),
        x(x), y(y) {}
  int x, y;
};

class BadAction : public LoopError {
 public:
  using LoopError::LoopError;
};

class NotHomomorphism : public LoopError {
 public:
  using LoopError::LoopError;
};

class NotCC : public LoopError {
 public:
  using LoopError::LoopError;
};

class NotPrimePower : public LoopError {
 public:
  explicit NotPrimePower(int order)
      : LoopError("order " + std::to_string(order) + " is not a prime power") {}
};

class NotComplementary : public LoopError {
 public:
  using LoopError::LoopError;
};

class TriplesFail : public LoopError {
 public:
  TriplesFail(const std::string& which, int x, int y, int z)
      : LoopError("triple " + which + " does not associate: witness (" + std::to_string(x) + "," +
                  std::to_string(y) + "," + std::to_string(z) + ")"),
        which(which), x(x), y(y), z(z) {}
  std::string which;
  int x, y, z;
};

// A theorem-backed internal assertion failed. Seeing one of these means the
// input violates a structural fact the library relies on, or there is a bug.
class InvariantViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

inline void ensure(bool cond, const char* what) {
  if (!cond) throw InvariantViolation(what);
}

}  // namespace ccloop
