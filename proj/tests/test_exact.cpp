#include "doctest.h"
#include "sogen/exact.hpp"

#include <cmath>

using namespace sogen;

TEST_CASE("rational parse and print round trip") {
  CHECK(rational_str(parse_rational("3/4")) == "3/4");
  CHECK(rational_str(parse_rational("-6/8")) == "-3/4");
  CHECK(rational_str(parse_rational("5")) == "5");
  CHECK(rational_str(parse_rational(" 10/4 ")) == "5/2");
  CHECK_THROWS_AS(parse_rational("1/0"), ParseError);
  CHECK_THROWS_AS(parse_rational("x"), ParseError);
  CHECK_THROWS_AS(parse_rational("1/2junk"), ParseError);
}

TEST_CASE("squarefree decomposition") {
  auto p = squarefree_decompose(Integer(8));
  CHECK(p.square_root == 2);
  CHECK(p.free_part == 2);
  p = squarefree_decompose(Integer(1));
  CHECK(p.square_root == 1);
  CHECK(p.free_part == 1);
  p = squarefree_decompose(Integer(360));  // 36 * 10
  CHECK(p.square_root == 6);
  CHECK(p.free_part == 10);
  p = squarefree_decompose(Integer(1000003));  // prime
  CHECK(p.square_root == 1);
  CHECK(p.free_part == 1000003);
  CHECK_THROWS_AS(squarefree_decompose(Integer(0)), DomainError);
  CHECK_THROWS_AS(squarefree_decompose(Integer(-4)), DomainError);
}

TEST_CASE("surd canonicalization") {
  QuadSurd a(Rational(0), Rational(1), Integer(8));  // sqrt(8) = 2 sqrt(2)
  CHECK(a.surd_coefficient() == 2);
  CHECK(a.radicand() == 2);
  QuadSurd b(Rational(1), Rational(3), Integer(4));  // 1 + 3*2
  CHECK(b.is_rational());
  CHECK(b.rational_part() == 7);
  QuadSurd c(Rational(5), Rational(0), Integer(7));  // zero coefficient folds
  CHECK(c.is_rational());
  CHECK(c.radicand() == 1);
  CHECK_THROWS_AS(QuadSurd(Rational(0), Rational(1), Integer(-2)), DomainError);
}

TEST_CASE("surd arithmetic stays in the field") {
  QuadSurd x(Rational(1, 2), Rational(1, 3), Integer(5));
  QuadSurd y(Rational(-2), Rational(1), Integer(5));
  QuadSurd sum = x + y;
  CHECK(sum.rational_part() == Rational(-3, 2));
  CHECK(sum.surd_coefficient() == Rational(4, 3));
  QuadSurd prod = x * y;
  // (1/2 + 1/3 r5)(-2 + r5) = -1 + 5/3 + (1/2 - 2/3) r5
  CHECK(prod.rational_part() == Rational(2, 3));
  CHECK(prod.surd_coefficient() == Rational(-1, 6));
  QuadSurd quot = prod / y;
  CHECK(quot == x);
  QuadSurd z(Rational(0), Rational(1), Integer(3));
  CHECK_THROWS_AS((void)(x + z), FieldMismatchError);
  CHECK_THROWS_AS((void)(x * z), FieldMismatchError);
  CHECK((x * QuadSurd(2)).rational_part() == 1);  // rationals mix freely
  CHECK_THROWS_AS((void)(x / QuadSurd(0)), DomainError);
}

TEST_CASE("surd exact sign and ordering") {
  QuadSurd pos(Rational(-2), Rational(1), Integer(5));  // sqrt(5) > 2
  CHECK(pos.sign() == 1);
  QuadSurd neg(Rational(2), Rational(-1), Integer(5));
  CHECK(neg.sign() == -1);
  QuadSurd alt(Rational(3), Rational(-1), Integer(5));  // 3 > sqrt(5)
  CHECK(alt.sign() == 1);
  CHECK(QuadSurd(0).sign() == 0);
  QuadSurd big(Rational(0), Rational(1), Integer(2));
  CHECK(big > QuadSurd(1));
  CHECK(big < QuadSurd(2));
  CHECK(big.to_double() == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
}

TEST_CASE("sqrt of rational") {
  QuadSurd r = QuadSurd::sqrt_of_rational(Rational(9, 4));
  CHECK(r.is_rational());
  CHECK(r.rational_part() == Rational(3, 2));
  QuadSurd h = QuadSurd::sqrt_of_rational(Rational(1, 2));
  CHECK(h.surd_coefficient() == Rational(1, 2));
  CHECK(h.radicand() == 2);
  CHECK((h * h).rational_part() == Rational(1, 2));
  QuadSurd t = QuadSurd::sqrt_of_rational(Rational(5, 9));
  CHECK((t * t) == QuadSurd(Rational(5, 9)));
  CHECK_THROWS_AS(QuadSurd::sqrt_of_rational(Rational(-1)), DomainError);
}

TEST_CASE("surd parse and print round trip") {
  const char* cases[] = {"(1/2 + 1/2*sqrt(2))", "(-1/4 + 1/4*sqrt(5))",
                         "(0 - 2/3*sqrt(7))",   "(3 + 1*sqrt(2))",
                         "2/3",                 "-5"};
  for (const char* text : cases) {
    QuadSurd v = QuadSurd::parse(text);
    CHECK(QuadSurd::parse(v.str()) == v);
  }
  CHECK(QuadSurd::parse("(0 + sqrt(5))") == QuadSurd(Rational(0), Rational(1), Integer(5)));
  CHECK(QuadSurd::parse("(0 + 1*sqrt(9))").is_rational());
  CHECK(QuadSurd::parse(" ( 1/2 + 1/2 * sqrt( 2 ) ) ").radicand() == 2);
}

TEST_CASE("surd parse errors carry a column") {
  try {
    QuadSurd::parse("(1/2 * sqrt(2))");
    CHECK(false);
  } catch (const ParseError& e) {
    CHECK(e.line() == 1);
    CHECK(e.column() == 6);
  }
  CHECK_THROWS_AS(QuadSurd::parse("(1 + 2*sqrt(2)"), ParseError);
  CHECK_THROWS_AS(QuadSurd::parse("(1 + 2*sqr(2))"), ParseError);
  CHECK_THROWS_AS(QuadSurd::parse("1/2 extra"), ParseError);
  CHECK_THROWS_AS(QuadSurd::parse(""), ParseError);
}
