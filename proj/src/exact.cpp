// Copyright (c) 2026 The sogen authors
// SPDX-License-Identifier: MIT

#include "sogen/exact.hpp"

#include <cctype>
#include <cmath>
#include <utility>

namespace sogen {

std::string rational_str(const Rational& r) { return r.get_str(); }

namespace {

/// Recursive-descent reader for the exact scalar grammar
///   scalar   := rational | '(' rational (+|-) [rational '*'] 'sqrt' '(' nat ')' ')'
///   rational := ['-'] nat ['/' nat]
/// Column numbers in errors are 1-based offsets into the given string.
struct ScalarReader {
  const std::string& s;
  size_t pos = 0;

  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError(msg, 1, static_cast<int>(pos) + 1);
  }

  void skip_ws() {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
  }

  bool peek_is(char ch) {
    skip_ws();
    return pos < s.size() && s[pos] == ch;
  }

  void expect(char ch, const std::string& what) {
    skip_ws();
    if (pos >= s.size() || s[pos] != ch) fail("expected '" + std::string(1, ch) + "' " + what);
    ++pos;
  }

  Integer read_natural() {
    skip_ws();
    size_t start = pos;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
    if (pos == start) fail("expected a digit");
    return Integer(s.substr(start, pos - start));
  }

  Rational read_rational() {
    skip_ws();
    bool neg = false;
    if (pos < s.size() && (s[pos] == '-' || s[pos] == '+')) {
      neg = s[pos] == '-';
      ++pos;
    }
    Integer num = read_natural();
    Integer den = 1;
    if (pos < s.size() && s[pos] == '/') {
      ++pos;
      den = read_natural();
      if (den == 0) fail("zero denominator");
    }
    Rational r(num, den);
    r.canonicalize();
    return neg ? Rational(-r) : r;
  }

  void read_keyword(const std::string& kw) {
    skip_ws();
    if (s.compare(pos, kw.size(), kw) != 0) fail("expected '" + kw + "'");
    pos += kw.size();
  }

  QuadSurd read_scalar() {
    skip_ws();
    if (pos >= s.size()) fail("empty scalar");
    if (s[pos] != '(') {
      Rational r = read_rational();
      return QuadSurd(r);
    }
    ++pos;  // consume '('
    Rational a = read_rational();
    skip_ws();
    if (pos >= s.size() || (s[pos] != '+' && s[pos] != '-'))
      fail("expected '+' or '-' between rational and root parts");
    bool neg = s[pos] == '-';
    ++pos;
    skip_ws();
    Rational b(1);
    if (pos < s.size() && s[pos] != 's') {
      b = read_rational();
      expect('*', "before sqrt");
    }
    read_keyword("sqrt");
    expect('(', "after sqrt");
    Integer c = read_natural();
    expect(')', "closing the radicand");
    expect(')', "closing the scalar");
    if (neg) b = -b;
    return QuadSurd(a, b, c);
  }

  void expect_end() {
    skip_ws();
    if (pos < s.size()) fail("unexpected trailing input");
  }
};

}  // namespace

Rational parse_rational(const std::string& text) {
  ScalarReader reader{text};
  Rational r = reader.read_rational();
  reader.expect_end();
  return r;
}

SquarefreeParts squarefree_decompose(const Integer& n) {
  if (n <= 0) throw DomainError("squarefree decomposition requires a positive integer");
  Integer r = n;
  Integer sq = 1;
  const Integer trial_limit = 1000000;
  Integer d = 2;
  bool cut_off = false;
  while (d * d <= r) {
    if (d > trial_limit) {
      cut_off = true;
      break;
    }
    Integer dd = d * d;
    while (r % dd == 0) {
      r /= dd;
      sq *= d;
    }
    ++d;
  }
  if (r > 1 && mpz_perfect_square_p(r.get_mpz_t())) {
    Integer root;
    mpz_sqrt(root.get_mpz_t(), r.get_mpz_t());
    sq *= root;
    r = 1;
  } else if (cut_off && r > Integer("1000000000000")) {
    // All prime squares up to 10^12 are removed at this point; beyond that a
    // square of a prime above the trial bound cannot be ruled out.
    throw DomainError("radicand too large to certify squarefree: " + n.get_str());
  }
  return {sq, r};
}

QuadSurd::QuadSurd(const Rational& a, const Rational& b, const Integer& c)
    : a_(a), b_(b), c_(c) {
  canonicalize();
}

void QuadSurd::canonicalize() {
  // mpq_class two-argument construction does not reduce; normalize defensively.
  a_.canonicalize();
  b_.canonicalize();
  if (c_ < 0) throw DomainError("negative radicand in quadratic surd");
  if (c_ == 0) {
    b_ = 0;
    c_ = 1;
  }
  if (b_ == 0) {
    c_ = 1;
    return;
  }
  SquarefreeParts parts = squarefree_decompose(c_);
  b_ *= Rational(parts.square_root);
  c_ = parts.free_part;
  if (c_ == 1) {
    a_ += b_;
    b_ = 0;
  }
}

QuadSurd QuadSurd::sqrt_of_rational(const Rational& r) {
  if (sgn(r) < 0) throw DomainError("square root of a negative rational");
  if (sgn(r) == 0) return QuadSurd();
  // sqrt(p/q) = sqrt(p*q) / q with p/q in lowest terms.
  Integer p = r.get_num();
  Integer q = r.get_den();
  return QuadSurd(Rational(0), Rational(1, q), p * q);
}

namespace {

Integer merged_radicand(const QuadSurd& x, const QuadSurd& y) {
  if (x.is_rational()) return y.radicand();
  if (y.is_rational()) return x.radicand();
  if (x.radicand() != y.radicand())
    throw FieldMismatchError("mixing sqrt(" + x.radicand().get_str() + ") with sqrt(" +
                             y.radicand().get_str() + ")");
  return x.radicand();
}

}  // namespace

QuadSurd QuadSurd::operator-() const {
  QuadSurd r = *this;
  r.a_ = -r.a_;
  r.b_ = -r.b_;
  return r;
}

QuadSurd QuadSurd::operator+(const QuadSurd& o) const {
  Integer c = merged_radicand(*this, o);
  return QuadSurd(a_ + o.a_, b_ + o.b_, c);
}

QuadSurd QuadSurd::operator-(const QuadSurd& o) const { return *this + (-o); }

QuadSurd QuadSurd::operator*(const QuadSurd& o) const {
  Integer c = merged_radicand(*this, o);
  Rational cr(c);
  return QuadSurd(a_ * o.a_ + b_ * o.b_ * cr, a_ * o.b_ + b_ * o.a_, c);
}

QuadSurd QuadSurd::operator/(const QuadSurd& o) const {
  if (o.is_zero()) throw DomainError("division by zero surd");
  if (o.is_rational()) {
    QuadSurd r = *this;
    r.a_ /= o.a_;
    r.b_ /= o.a_;
    return r;
  }
  // Multiply by the conjugate; the field norm of a nonzero canonical surd is
  // a nonzero rational (c squarefree > 1 cannot equal (a/b)^2).
  Rational n = o.field_norm();
  QuadSurd conj = o.conjugate();
  QuadSurd prod = *this * conj;
  prod.a_ /= n;
  prod.b_ /= n;
  return prod;
}

QuadSurd QuadSurd::conjugate() const {
  QuadSurd r = *this;
  r.b_ = -r.b_;
  return r;
}

Rational QuadSurd::field_norm() const { return a_ * a_ - b_ * b_ * Rational(c_); }

int QuadSurd::sign() const {
  int sa = sgn(a_);
  int sb = sgn(b_);
  if (sb == 0) return sa;
  if (sa == 0) return sb;
  if (sa == sb) return sa;
  // Opposite signs: compare a^2 against b^2 c.
  return sa * sgn(field_norm());
}

bool QuadSurd::operator==(const QuadSurd& o) const {
  return a_ == o.a_ && b_ == o.b_ && c_ == o.c_;
}

double QuadSurd::to_double() const {
  return a_.get_d() + b_.get_d() * std::sqrt(c_.get_d());
}

std::string QuadSurd::str() const {
  if (is_rational()) return rational_str(a_);
  std::string sep = sgn(b_) < 0 ? " - " : " + ";
  Rational mag = abs(b_);
  return "(" + rational_str(a_) + sep + rational_str(mag) + "*sqrt(" + c_.get_str() + "))";
}

QuadSurd QuadSurd::parse(const std::string& text) {
  ScalarReader reader{text};
  QuadSurd v = reader.read_scalar();
  reader.expect_end();
  return v;
}

QuadSurd operator*(const Rational& r, const QuadSurd& s) { return QuadSurd(r) * s; }

}  // namespace sogen
