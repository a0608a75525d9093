// Copyright (c) 2026 The sogen authors
// SPDX-License-Identifier: MIT

#pragma once

#include <stdexcept>
#include <string>

namespace sogen {

/// Rotation logarithm or BCH combination landed on (or too close to) the
/// branch cut of the principal logarithm, where the result is ill defined.
class BranchError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Two skew matrices handed to an operation that requires them to be
/// orthogonal in the trace inner product were not.
class OrthogonalityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An input that must be normalizable (nonzero) was zero, or a claimed
/// rotation/skew matrix failed its defining identity beyond tolerance.
class NormalizationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Matrix or mode-count dimensions are out of the supported range or
/// mutually inconsistent.
class DimensionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Exact scalars from distinct quadratic fields Q(sqrt(c)) were mixed.
class FieldMismatchError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A word enumeration would exceed the configured work ceiling.
class BudgetError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An enumeration (permutation orbit, subset walk) exceeds its size cap.
class SizeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A mode-subset or index list is malformed (out of range, unsorted, or
/// with repeats).
class IndexError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A documented precondition of an operation does not hold for the inputs.
class PreconditionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Configuration file missing, unreadable, or containing invalid values.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A value outside the mathematical domain of the operation (for example a
/// claimed cosine with |cos| > 1, or a negative radicand).
class DomainError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Text input failed to parse; carries the 1-based line and column of the
/// offending token.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& msg, int line, int column)
      : std::runtime_error("parse error at line " + std::to_string(line) +
                           ", column " + std::to_string(column) + ": " + msg),
        detail_(msg),
        line_(line),
        column_(column) {}

  /// Message without the position prefix, for rethrowing with an adjusted
  /// position.
  const std::string& detail() const { return detail_; }
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  std::string detail_;
  int line_;
  int column_;
};

}  // namespace sogen
