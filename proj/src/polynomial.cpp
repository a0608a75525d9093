// Copyright (c) 2026 The sogen authors
// SPDX-License-Identifier: MIT

#include "sogen/polynomial.hpp"

#include <algorithm>
#include <map>

namespace sogen {

namespace {

void trim(std::vector<Rational>& c) {
  while (!c.empty() && sgn(c.back()) == 0) c.pop_back();
}

const Rational kZero(0);

}  // namespace

Polynomial::Polynomial(std::vector<Rational> coeffs) : coeffs_(std::move(coeffs)) {
  for (Rational& c : coeffs_) c.canonicalize();
  trim(coeffs_);
}

Polynomial Polynomial::from_integers(const std::vector<long>& coeffs) {
  std::vector<Rational> c;
  c.reserve(coeffs.size());
  for (long v : coeffs) c.emplace_back(v);
  return Polynomial(std::move(c));
}

Polynomial Polynomial::unity_minus_one(long n) {
  if (n < 1) throw DomainError("unity_minus_one requires n >= 1");
  std::vector<Rational> c(static_cast<size_t>(n) + 1, Rational(0));
  c[0] = -1;
  c[static_cast<size_t>(n)] = 1;
  return Polynomial(std::move(c));
}

const Rational& Polynomial::coeff(size_t i) const {
  return i < coeffs_.size() ? coeffs_[i] : kZero;
}

const Rational& Polynomial::leading() const {
  if (coeffs_.empty()) return kZero;
  return coeffs_.back();
}

bool Polynomial::is_monic() const { return !coeffs_.empty() && coeffs_.back() == 1; }

bool Polynomial::has_integer_coefficients() const {
  for (const Rational& c : coeffs_)
    if (c.get_den() != 1) return false;
  return true;
}

Polynomial Polynomial::operator+(const Polynomial& o) const {
  std::vector<Rational> c(std::max(coeffs_.size(), o.coeffs_.size()), Rational(0));
  for (size_t i = 0; i < c.size(); ++i) c[i] = coeff(i) + o.coeff(i);
  return Polynomial(std::move(c));
}

Polynomial Polynomial::operator-(const Polynomial& o) const {
  std::vector<Rational> c(std::max(coeffs_.size(), o.coeffs_.size()), Rational(0));
  for (size_t i = 0; i < c.size(); ++i) c[i] = coeff(i) - o.coeff(i);
  return Polynomial(std::move(c));
}

Polynomial Polynomial::operator*(const Polynomial& o) const {
  if (is_zero() || o.is_zero()) return Polynomial();
  std::vector<Rational> c(coeffs_.size() + o.coeffs_.size() - 1, Rational(0));
  for (size_t i = 0; i < coeffs_.size(); ++i)
    for (size_t j = 0; j < o.coeffs_.size(); ++j) c[i + j] += coeffs_[i] * o.coeffs_[j];
  return Polynomial(std::move(c));
}

Polynomial::DivisionResult Polynomial::divide(const Polynomial& divisor) const {
  if (divisor.is_zero()) throw DomainError("polynomial division by zero");
  std::vector<Rational> rem = coeffs_;
  trim(rem);
  long dd = divisor.degree();
  std::vector<Rational> quot;
  if (static_cast<long>(rem.size()) - 1 >= dd)
    quot.assign(rem.size() - static_cast<size_t>(dd), Rational(0));
  while (static_cast<long>(rem.size()) - 1 >= dd) {
    size_t shift = rem.size() - 1 - static_cast<size_t>(dd);
    Rational f = rem.back() / divisor.leading();
    quot[shift] = f;
    for (long i = 0; i <= dd; ++i)
      rem[shift + static_cast<size_t>(i)] -= f * divisor.coeff(static_cast<size_t>(i));
    trim(rem);
  }
  return {Polynomial(std::move(quot)), Polynomial(std::move(rem))};
}

std::complex<double> Polynomial::eval(const std::complex<double>& x) const {
  std::complex<double> acc(0.0, 0.0);
  for (size_t i = coeffs_.size(); i-- > 0;) acc = acc * x + coeffs_[i].get_d();
  return acc;
}

Rational Polynomial::eval(const Rational& x) const {
  Rational acc(0);
  for (size_t i = coeffs_.size(); i-- > 0;) acc = acc * x + coeffs_[i];
  return acc;
}

std::string Polynomial::str() const {
  if (coeffs_.empty()) return "0";
  std::string out;
  for (size_t i = coeffs_.size(); i-- > 0;) {
    const Rational& c = coeffs_[i];
    if (sgn(c) == 0) continue;
    Rational mag = abs(c);
    if (out.empty()) {
      if (sgn(c) < 0) out += "-";
    } else {
      out += sgn(c) < 0 ? " - " : " + ";
    }
    bool unit = mag == 1;
    if (i == 0) {
      out += rational_str(mag);
    } else {
      if (!unit) {
        out += rational_str(mag);
        out += "*";
      }
      out += "x";
      if (i > 1) out += "^" + std::to_string(i);
    }
  }
  return out.empty() ? "0" : out;
}

long euler_phi(long n) {
  if (n < 1) throw DomainError("euler_phi requires n >= 1");
  long result = n;
  long m = n;
  for (long p = 2; p * p <= m; ++p) {
    if (m % p == 0) {
      result -= result / p;
      while (m % p == 0) m /= p;
    }
  }
  if (m > 1) result -= result / m;
  return result;
}

std::vector<long> divisors(long n) {
  if (n < 1) throw DomainError("divisors requires n >= 1");
  std::vector<long> small, large;
  for (long d = 1; d * d <= n; ++d) {
    if (n % d == 0) {
      small.push_back(d);
      if (d != n / d) large.push_back(n / d);
    }
  }
  small.insert(small.end(), large.rbegin(), large.rend());
  return small;
}

const Polynomial& cyclotomic(long n) {
  if (n < 1) throw DomainError("cyclotomic index must be >= 1");
  static std::map<long, Polynomial> cache;
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  Polynomial result;
  if (n == 1) {
    result = Polynomial::from_integers({-1, 1});
  } else {
    Polynomial denom = Polynomial::from_integers({1});
    for (long d : divisors(n))
      if (d < n) denom = denom * cyclotomic(d);
    auto division = Polynomial::unity_minus_one(n).divide(denom);
    if (!division.remainder.is_zero())
      throw DomainError("internal cyclotomic division left a remainder");
    result = division.quotient;
  }
  return cache.emplace(n, std::move(result)).first->second;
}

std::vector<std::pair<long, Polynomial>> factor_unity(long q) {
  if (q < 1) throw DomainError("factor_unity requires q >= 1");
  std::vector<std::pair<long, Polynomial>> factors;
  for (long d : divisors(q)) factors.emplace_back(d, cyclotomic(d));
  return factors;
}

std::optional<long> is_cyclotomic(const Polynomial& p) {
  long d = p.degree();
  if (d < 1 || !p.is_monic() || !p.has_integer_coefficients()) return std::nullopt;
  // phi(n) >= sqrt(n/2), so phi(n) = d forces n <= 2d^2; +2 for slack.
  long bound = 2 * d * d + 2;
  for (long n = 1; n <= bound; ++n) {
    if (euler_phi(n) != d) continue;
    if (cyclotomic(n) == p) return n;
  }
  return std::nullopt;
}

Polynomial min_poly_unit_complex(const QuadSurd& cos_alpha) {
  if ((cos_alpha - QuadSurd(1)).sign() > 0 || (cos_alpha + QuadSurd(1)).sign() < 0)
    throw DomainError("|cos| > 1 cannot come from a unit complex number");
  if (cos_alpha.is_rational()) {
    const Rational& a = cos_alpha.rational_part();
    if (a == 1) return Polynomial::from_integers({-1, 1});
    if (a == -1) return Polynomial::from_integers({1, 1});
    // exp(i*alpha) satisfies x^2 - 2cos(alpha)x + 1, irreducible since the
    // roots are non-real.
    return Polynomial({Rational(1), -2 * a, Rational(1)});
  }
  // cos = A + B*sqrt(C): multiply the quadratics for both Galois conjugates,
  // (x^2 - 2(A + B rt C)x + 1)(x^2 - 2(A - B rt C)x + 1).
  const Rational& A = cos_alpha.rational_part();
  const Rational& B = cos_alpha.surd_coefficient();
  Rational C(cos_alpha.radicand());
  Rational mid = 4 * A * A + 2 - 4 * B * B * C;
  return Polynomial({Rational(1), -4 * A, mid, -4 * A, Rational(1)});
}

namespace {

bool has_integer_root(const Polynomial& p) {
  Rational c0 = p.coeff(0);
  if (sgn(c0) == 0) return true;  // x = 0
  Integer c0i = c0.get_num();
  Integer mag = abs(c0i);
  if (!mag.fits_slong_p()) throw DomainError("constant term too large for root search");
  for (long d : divisors(mag.get_si())) {
    if (sgn(p.eval(Rational(d))) == 0) return true;
    if (sgn(p.eval(Rational(-d))) == 0) return true;
  }
  return false;
}

}  // namespace

bool is_irreducible_deg_le4(const Polynomial& p) {
  long d = p.degree();
  if (d < 1 || d > 4) throw DomainError("irreducibility check supports degrees 1..4 only");
  if (!p.is_monic() || !p.has_integer_coefficients())
    throw DomainError("irreducibility check expects a monic integer polynomial");
  if (d == 1) return true;
  if (has_integer_root(p)) return false;  // monic: rational roots are integers
  if (d <= 3) return true;                // no linear factor settles degrees 2 and 3
  // Degree 4 without linear factors: search for a monic integer split
  // (x^2 + a x + b)(x^2 + e x + f) with b*f = c0, a+e = c3, b+f+ae = c2,
  // a*f + b*e = c1 (Gauss: a rational factorization can be taken integral).
  Integer c0 = p.coeff(0).get_num();
  Integer c1 = p.coeff(1).get_num();
  Integer c2 = p.coeff(2).get_num();
  Integer c3 = p.coeff(3).get_num();
  Integer mag = abs(c0);
  if (!mag.fits_slong_p()) throw DomainError("constant term too large for factor search");
  for (long u : divisors(mag.get_si())) {
    for (long b : {u, -u}) {
      Integer bi(b);
      Integer fi = c0 / bi;
      // a satisfies a^2 - c3*a + (c2 - b - f) = 0.
      Integer disc = c3 * c3 - 4 * (c2 - bi - fi);
      if (disc < 0 || !mpz_perfect_square_p(disc.get_mpz_t())) continue;
      Integer root;
      mpz_sqrt(root.get_mpz_t(), disc.get_mpz_t());
      for (int s : {1, -1}) {
        Integer twice_a = c3 + s * root;
        if (twice_a % 2 != 0) continue;
        Integer a = twice_a / 2;
        Integer e = c3 - a;
        if (a * fi + bi * e == c1) return false;
      }
    }
  }
  return true;
}

}  // namespace sogen
