// Copyright (c) 2026 The sogen authors
// SPDX-License-Identifier: MIT

#pragma once

#include <complex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "sogen/exact.hpp"

namespace sogen {

/// Univariate polynomial with exact rational coefficients, stored in
/// ascending degree order with the leading coefficient nonzero.
class Polynomial {
 public:
  Polynomial() = default;  // zero polynomial
  explicit Polynomial(std::vector<Rational> coeffs);
  static Polynomial from_integers(const std::vector<long>& coeffs);
  /// x^n - 1.
  static Polynomial unity_minus_one(long n);

  /// Degree, with the zero polynomial mapped to -1.
  long degree() const { return static_cast<long>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  const Rational& coeff(size_t i) const;
  const Rational& leading() const;
  bool is_monic() const;
  bool has_integer_coefficients() const;

  bool operator==(const Polynomial& o) const { return coeffs_ == o.coeffs_; }
  bool operator!=(const Polynomial& o) const { return !(*this == o); }
  Polynomial operator+(const Polynomial& o) const;
  Polynomial operator-(const Polynomial& o) const;
  Polynomial operator*(const Polynomial& o) const;

  struct DivisionResult;
  /// Euclidean division in Q[x]. DomainError on division by zero.
  DivisionResult divide(const Polynomial& divisor) const;

  std::complex<double> eval(const std::complex<double>& x) const;
  Rational eval(const Rational& x) const;

  /// Human-readable form like "x^4 - 4*x^3 + 2*x^2 - 4*x + 1".
  std::string str() const;

 private:
  std::vector<Rational> coeffs_;
};

struct Polynomial::DivisionResult {
  Polynomial quotient;
  Polynomial remainder;
};

long euler_phi(long n);
std::vector<long> divisors(long n);

/// The n-th cyclotomic polynomial, computed by exact division and memoized.
/// DomainError for n < 1.
const Polynomial& cyclotomic(long n);

/// Factors x^q - 1 into cyclotomic polynomials: returns (d, Phi_d) for every
/// divisor d of q, in ascending d.
std::vector<std::pair<long, Polynomial>> factor_unity(long q);

/// If p equals some cyclotomic polynomial, returns its index. The search is
/// exhaustive: phi(n) >= sqrt(n/2) bounds candidate indices by 2*deg^2 + 2.
std::optional<long> is_cyclotomic(const Polynomial& p);

/// Minimal polynomial over Q of the unit complex number exp(i*alpha) given
/// cos(alpha) exactly. Degree 1 for cos = +/-1, degree 2 for other rational
/// cosines, degree 4 when the cosine has a nontrivial root part.
/// DomainError when |cos| > 1.
Polynomial min_poly_unit_complex(const QuadSurd& cos_alpha);

/// Irreducibility over Q for monic integer polynomials of degree 1..4, by
/// rational-root exclusion plus integer quadratic-factor search.
/// DomainError for other inputs.
bool is_irreducible_deg_le4(const Polynomial& p);

}  // namespace sogen
