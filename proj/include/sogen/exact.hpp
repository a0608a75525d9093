// Copyright (c) 2026 The sogen authors
// SPDX-License-Identifier: MIT

#pragma once

#include <gmpxx.h>

#include <string>

#include "sogen/errors.hpp"

namespace sogen {

using Integer = mpz_class;
using Rational = mpq_class;

/// Canonical decimal string "p/q" (or "p" when q = 1).
std::string rational_str(const Rational& r);

/// Parses "p", "-p" or "p/q". Throws ParseError on malformed input.
Rational parse_rational(const std::string& text);

/// Decomposition n = square_root^2 * free_part with free_part squarefree.
struct SquarefreeParts {
  Integer square_root;
  Integer free_part;
};

/// Exact squarefree decomposition of n > 0. Throws DomainError for n <= 0 or
/// when the cofactor left after trial division is too large to certify
/// squarefree (beyond 10^12 after removing all prime squares up to 10^6).
SquarefreeParts squarefree_decompose(const Integer& n);

/// Element of a real quadratic field: value = a + b*sqrt(c) with a, b
/// rational and c a squarefree positive integer. Canonical form: b = 0
/// implies c = 1, and c = 1 implies b = 0 (the root is folded into a).
/// Arithmetic between elements of distinct fields (both with c > 1 and
/// different c) throws FieldMismatchError; rationals combine with anything.
class QuadSurd {
 public:
  QuadSurd() : a_(0), b_(0), c_(1) {}
  QuadSurd(const Rational& a) : a_(a), b_(0), c_(1) {  // NOLINT(runtime/explicit)
    a_.canonicalize();
  }
  QuadSurd(long a) : a_(a), b_(0), c_(1) {}  // NOLINT(runtime/explicit)
  QuadSurd(const Rational& a, const Rational& b, const Integer& c);

  /// sqrt(r) for r >= 0, expressed as (0 + b*sqrt(c)). DomainError if r < 0.
  static QuadSurd sqrt_of_rational(const Rational& r);

  const Rational& rational_part() const { return a_; }
  const Rational& surd_coefficient() const { return b_; }
  const Integer& radicand() const { return c_; }
  bool is_rational() const { return b_ == 0; }
  bool is_zero() const { return a_ == 0 && b_ == 0; }

  QuadSurd operator-() const;
  QuadSurd operator+(const QuadSurd& o) const;
  QuadSurd operator-(const QuadSurd& o) const;
  QuadSurd operator*(const QuadSurd& o) const;
  QuadSurd operator/(const QuadSurd& o) const;  // DomainError on /0
  QuadSurd& operator+=(const QuadSurd& o) { return *this = *this + o; }
  QuadSurd& operator-=(const QuadSurd& o) { return *this = *this - o; }
  QuadSurd& operator*=(const QuadSurd& o) { return *this = *this * o; }
  QuadSurd& operator/=(const QuadSurd& o) { return *this = *this / o; }

  /// Galois conjugate a - b*sqrt(c).
  QuadSurd conjugate() const;
  /// Field norm a^2 - b^2 c (always rational).
  Rational field_norm() const;

  /// Exact sign of the real value: -1, 0 or +1.
  int sign() const;
  bool operator==(const QuadSurd& o) const;
  bool operator!=(const QuadSurd& o) const { return !(*this == o); }
  bool operator<(const QuadSurd& o) const { return (*this - o).sign() < 0; }
  bool operator>(const QuadSurd& o) const { return o < *this; }
  bool operator<=(const QuadSurd& o) const { return !(o < *this); }
  bool operator>=(const QuadSurd& o) const { return !(*this < o); }

  double to_double() const;

  /// Canonical text form: "p/q" when rational, otherwise
  /// "(a + b*sqrt(c))" (with "- |b|" for negative b). parse() inverts str().
  std::string str() const;
  static QuadSurd parse(const std::string& text);

 private:
  void canonicalize();

  Rational a_;
  Rational b_;
  Integer c_;
};

QuadSurd operator*(const Rational& r, const QuadSurd& s);

}  // namespace sogen
