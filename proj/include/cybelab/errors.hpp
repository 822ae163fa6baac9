#pragma once

#include <stdexcept>
#include <string>

namespace cybelab {

/// A denominator factor fell outside the admissible atom set.
class AtomEscape : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// A residue was requested from a series window that does not cover degree -1.
class WindowTooNarrow : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// A coefficient of a completed-tensor product would need an unbounded sum.
class InfiniteSum : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class LegClash : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

class UnknownName : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

class NotInBminus : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

class DecompositionMismatch : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// No convention profile satisfies every calibration constraint.
class NoProfile : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class AmbiguousProfile : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class ConfigError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Parse failure with a 1-based source position.
class SyntaxError : public std::runtime_error {
public:
  SyntaxError(const std::string& what, int line, int column)
      : std::runtime_error(what + " at line " + std::to_string(line) + ", column " +
                           std::to_string(column)),
        line_(line),
        column_(column) {}
  int line() const { return line_; }
  int column() const { return column_; }

private:
  int line_;
  int column_;
};

}  // namespace cybelab
