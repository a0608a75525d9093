#include "doctest.h"
#include "sogen/polynomial.hpp"

#include <complex>

using namespace sogen;

namespace {

Polynomial ipoly(std::initializer_list<long> ascending) {
  return Polynomial::from_integers(std::vector<long>(ascending));
}

}  // namespace

TEST_CASE("polynomial arithmetic and division") {
  Polynomial p = ipoly({-1, 0, 1});  // x^2 - 1
  Polynomial q = ipoly({1, 1});      // x + 1
  auto d = p.divide(q);
  CHECK(d.quotient == ipoly({-1, 1}));
  CHECK(d.remainder.is_zero());
  CHECK(p == d.quotient * q);
  auto d2 = ipoly({1, 0, 0, 1}).divide(ipoly({2, 1}));  // x^3+1 by x+2
  CHECK(d2.quotient * ipoly({2, 1}) + d2.remainder == ipoly({1, 0, 0, 1}));
  CHECK(d2.remainder == ipoly({-7}));
  CHECK_THROWS_AS(p.divide(Polynomial()), DomainError);
  CHECK(p.str() == "x^2 - 1");
  CHECK(ipoly({1, -4, 2, -4, 1}).str() == "x^4 - 4*x^3 + 2*x^2 - 4*x + 1");
}

TEST_CASE("euler phi and divisors") {
  CHECK(euler_phi(1) == 1);
  CHECK(euler_phi(2) == 1);
  CHECK(euler_phi(12) == 4);
  CHECK(euler_phi(5) == 4);
  CHECK(euler_phi(100) == 40);
  CHECK(divisors(12) == std::vector<long>({1, 2, 3, 4, 6, 12}));
}

TEST_CASE("cyclotomic polynomials match their classical forms") {
  CHECK(cyclotomic(1) == ipoly({-1, 1}));
  CHECK(cyclotomic(2) == ipoly({1, 1}));
  CHECK(cyclotomic(3) == ipoly({1, 1, 1}));
  CHECK(cyclotomic(4) == ipoly({1, 0, 1}));
  CHECK(cyclotomic(5) == ipoly({1, 1, 1, 1, 1}));
  CHECK(cyclotomic(6) == ipoly({1, -1, 1}));
  CHECK(cyclotomic(8) == ipoly({1, 0, 0, 0, 1}));
  CHECK(cyclotomic(10) == ipoly({1, -1, 1, -1, 1}));
  CHECK(cyclotomic(12) == ipoly({1, 0, -1, 0, 1}));
  // First index with a coefficient outside {-1,0,1} is 105.
  CHECK(cyclotomic(105).coeff(7) == -2);
}

TEST_CASE("factor_unity multiplies back to x^q - 1") {
  for (long q : {1L, 2L, 6L, 12L, 30L}) {
    auto factors = factor_unity(q);
    Polynomial prod = ipoly({1});
    long degree_sum = 0;
    for (const auto& [d, phi] : factors) {
      prod = prod * phi;
      degree_sum += euler_phi(d);
    }
    CHECK(prod == Polynomial::unity_minus_one(q));
    CHECK(degree_sum == q);
  }
}

TEST_CASE("cyclotomic recognition") {
  CHECK(is_cyclotomic(cyclotomic(12)) == 12);
  CHECK(is_cyclotomic(cyclotomic(7)) == 7);
  CHECK(is_cyclotomic(ipoly({-1, 1})) == 1);
  CHECK(!is_cyclotomic(ipoly({1, 3, 1})));
  CHECK(!is_cyclotomic(ipoly({2, 1})));
  // x^4 + x^3 + x^2/4 + x + 1 has a non-integer coefficient.
  Polynomial quartic({Rational(1), Rational(1), Rational(1, 4), Rational(1), Rational(1)});
  CHECK(!is_cyclotomic(quartic));
}

TEST_CASE("minimal polynomial of a unit complex number") {
  CHECK(min_poly_unit_complex(QuadSurd(1)) == ipoly({-1, 1}));
  CHECK(min_poly_unit_complex(QuadSurd(-1)) == ipoly({1, 1}));
  // cos = 1/2: x^2 - x + 1 = Phi_6.
  CHECK(min_poly_unit_complex(QuadSurd(Rational(1, 2))) == cyclotomic(6));
  // cos = sqrt(2)/2: Phi_8. Frozen oracle: the eighth primitive root.
  QuadSurd c8(Rational(0), Rational(1, 2), Integer(2));
  CHECK(min_poly_unit_complex(c8) == cyclotomic(8));
  // cos = sqrt(3)/2: Phi_12.
  QuadSurd c12(Rational(0), Rational(1, 2), Integer(3));
  CHECK(min_poly_unit_complex(c12) == cyclotomic(12));
  // cos = (1+sqrt 5)/4: Phi_10; cos = (-1+sqrt 5)/4: Phi_5.
  QuadSurd c10(Rational(1, 4), Rational(1, 4), Integer(5));
  CHECK(min_poly_unit_complex(c10) == cyclotomic(10));
  QuadSurd c5(Rational(-1, 4), Rational(1, 4), Integer(5));
  CHECK(min_poly_unit_complex(c5) == cyclotomic(5));
  CHECK_THROWS_AS(min_poly_unit_complex(QuadSurd(2)), DomainError);
}

TEST_CASE("minimal polynomial vanishes at exp(i alpha)") {
  std::vector<QuadSurd> cosines = {
      QuadSurd(Rational(1, 3)),
      QuadSurd(Rational(-3, 7)),
      QuadSurd(Rational(0), Rational(1, 2), Integer(2)),
      QuadSurd(Rational(1, 4), Rational(1, 4), Integer(5)),
      QuadSurd(Rational(1, 3), Rational(1, 7), Integer(2)),
      QuadSurd(Rational(-1, 4), Rational(1, 2), Integer(2)),
  };
  for (const QuadSurd& c : cosines) {
    double cv = c.to_double();
    std::complex<double> root(cv, std::sqrt(1.0 - cv * cv));
    Polynomial p = min_poly_unit_complex(c);
    CHECK(std::abs(p.eval(root)) < 1e-10);
  }
}

TEST_CASE("irreducibility for degree at most 4") {
  CHECK(is_irreducible_deg_le4(ipoly({1, 0, 0, 0, 1})));       // x^4 + 1
  CHECK(is_irreducible_deg_le4(ipoly({1, 1, 1, 1, 1})));       // Phi_5
  CHECK(is_irreducible_deg_le4(ipoly({-2, 0, 1})));            // x^2 - 2
  CHECK(is_irreducible_deg_le4(ipoly({7, 1})));                // linear
  CHECK(!is_irreducible_deg_le4(ipoly({1, 2, 3, 2, 1})));      // (x^2+x+1)^2
  CHECK(!is_irreducible_deg_le4(ipoly({1, 0, 1, 0, 1})));      // Phi_3 * Phi_6
  CHECK(!is_irreducible_deg_le4(ipoly({-1, 0, 1})));           // (x-1)(x+1)
  CHECK(!is_irreducible_deg_le4(ipoly({0, 0, 0, 0, 1})));      // x^4
  CHECK(!is_irreducible_deg_le4(ipoly({-1, 0, 0, 0, 1})));     // x^4 - 1
  CHECK(!is_irreducible_deg_le4(ipoly({4, 0, 5, 0, 1})));      // (x^2+1)(x^2+4)
  CHECK(is_irreducible_deg_le4(ipoly({1, 3, 0, 0, 1})));       // x^4 + 3x + 1
  CHECK_THROWS_AS(is_irreducible_deg_le4(ipoly({1})), DomainError);
  Polynomial nonmonic = ipoly({1, 0, 2});
  CHECK_THROWS_AS(is_irreducible_deg_le4(nonmonic), DomainError);
}
