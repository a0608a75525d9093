#include "doctest.h"
#include "sogen/angle_class.hpp"
#include "sogen/lie_closure.hpp"
#include "sogen/so3.hpp"

#include <cmath>

using namespace sogen;

namespace {

QuadSurd surd(long a_n, long a_d, long b_n, long b_d, long c) {
  return QuadSurd(Rational(a_n, a_d), Rational(b_n, b_d), Integer(c));
}

}  // namespace

TEST_CASE("exact classification of rational cosines") {
  auto c = classify_exact(QuadSurd(Rational(1, 2)));
  CHECK(c.kind == AngleKind::RationalPi);
  CHECK(c.p == 1);
  CHECK(c.q == 3);
  CHECK(c.certificate.find("Phi_6") != std::string::npos);

  c = classify_exact(QuadSurd(Rational(-1, 2)));
  CHECK(c.p == 2);
  CHECK(c.q == 3);
  c = classify_exact(QuadSurd(0));
  CHECK(c.p == 1);
  CHECK(c.q == 2);
  c = classify_exact(QuadSurd(1));
  CHECK(c.p == 0);
  CHECK(c.q == 1);
  c = classify_exact(QuadSurd(-1));
  CHECK(c.p == 1);
  CHECK(c.q == 1);

  c = classify_exact(QuadSurd(Rational(1, 3)));
  CHECK(c.kind == AngleKind::IrrationalPi);
  CHECK(c.certificate.find("non-integer") != std::string::npos);

  CHECK_THROWS_AS(classify_exact(QuadSurd(2)), DomainError);
}

TEST_CASE("Niven oracle: rational cosines are rational-pi only at 0, 1/2, 1") {
  // 200 exact rational cosines; by Niven's theorem exactly the five listed
  // values belong to rational multiples of pi.
  int rational_hits = 0;
  for (int num = -20; num <= 20; ++num) {
    for (long den : {20, 21, 19, 17, 24}) {
      Rational r(num, den);
      r.canonicalize();
      if (r < Rational(-1) || r > Rational(1)) continue;
      QuadSurd cosv(r);
      AngleClass cls = classify_exact(cosv);
      Rational twice = r * 2;
      bool niven = twice.get_den() == 1 && twice >= Rational(-2) && twice <= Rational(2);
      CHECK((cls.kind == AngleKind::RationalPi) == niven);
      if (cls.kind == AngleKind::RationalPi) ++rational_hits;
    }
  }
  CHECK(rational_hits >= 5);
}

TEST_CASE("exact classification of the eight degree-2 cosines") {
  struct Row {
    QuadSurd cosv;
    long p, q;
  };
  const Row rows[] = {
      {surd(0, 1, 1, 2, 2), 1, 4},   {surd(0, 1, -1, 2, 2), 3, 4},
      {surd(0, 1, 1, 2, 3), 1, 6},   {surd(0, 1, -1, 2, 3), 5, 6},
      {surd(1, 4, 1, 4, 5), 1, 5},   {surd(-1, 4, 1, 4, 5), 2, 5},
      {surd(1, 4, -1, 4, 5), 3, 5},  {surd(-1, 4, -1, 4, 5), 4, 5},
  };
  for (const Row& row : rows) {
    AngleClass cls = classify_exact(row.cosv);
    REQUIRE(cls.kind == AngleKind::RationalPi);
    CHECK(cls.p == row.p);
    CHECK(cls.q == row.q);
    // Cross-check against the floating angle.
    CHECK(std::cos(cls.angle()) == doctest::Approx(row.cosv.to_double()).epsilon(1e-12));
    // The equal-angle product of two plane rotations turns each of these
    // rational angles into an irrational-pi one.
    AngleClass prod = classify_exact(product_angle_cos_exact(row.cosv));
    CHECK(prod.kind == AngleKind::IrrationalPi);
  }
}

TEST_CASE("exact classification of known irrational product angles") {
  // Product angle for theta = pi/4: cos(alpha) = -1/4 + (1/2) sqrt(2).
  AngleClass c = classify_exact(surd(-1, 4, 1, 2, 2));
  CHECK(c.kind == AngleKind::IrrationalPi);
  // arccos(3/5) is the classic Niven irrational.
  CHECK(classify_exact(QuadSurd(Rational(3, 5))).kind == AngleKind::IrrationalPi);
  // Golden-ratio-adjacent surd that is not a root-of-unity cosine.
  CHECK(classify_exact(surd(1, 3, 1, 7, 5)).kind == AngleKind::IrrationalPi);
}

TEST_CASE("numeric classification by continued fractions") {
  auto c = classify_numeric(M_PI / 3);
  CHECK(c.kind == AngleKind::RationalPi);
  CHECK(c.p == 1);
  CHECK(c.q == 3);
  c = classify_numeric(3 * M_PI / 4);
  CHECK(c.p == 3);
  CHECK(c.q == 4);
  c = classify_numeric(7 * M_PI / 5);
  CHECK(c.p == 7);
  CHECK(c.q == 5);
  // Negative input normalizes into [0, 2*pi).
  c = classify_numeric(-M_PI / 3);
  CHECK(c.p == 5);
  CHECK(c.q == 3);
  c = classify_numeric(0.0);
  CHECK(c.p == 0);
  CHECK(c.q == 1);
  c = classify_numeric(2 * M_PI);
  CHECK(c.p == 0);
  CHECK(c.q == 1);
  // 1 radian resists at the default thresholds: the best convergent of
  // theta/pi below q_max = 10^4 misses by orders of magnitude.
  c = classify_numeric(1.0);
  CHECK(c.kind == AngleKind::Unknown);
  CHECK(c.certificate.find("cannot certify") != std::string::npos);
  // Generous thresholds accept the first convergent inside tol, as
  // contracted; numeric detection asserts proximity, never irrationality.
  c = classify_numeric(1.0, 1000000, 1e-12);
  CHECK(c.kind == AngleKind::RationalPi);
  CHECK(c.p == 265381);
  CHECK(c.q == 833719);
  CHECK_THROWS_AS(classify_numeric(1.0, 0, 1e-9), DomainError);
}

TEST_CASE("exact and numeric classification agree on table angles") {
  struct Pair {
    QuadSurd cosv;
    double theta;
  };
  const Pair pairs[] = {
      {QuadSurd(1), 0.0},
      {QuadSurd(-1), M_PI},
      {QuadSurd(0), M_PI / 2},
      {QuadSurd(Rational(1, 2)), M_PI / 3},
      {QuadSurd(Rational(-1, 2)), 2 * M_PI / 3},
      {surd(0, 1, 1, 2, 2), M_PI / 4},
      {surd(0, 1, -1, 2, 2), 3 * M_PI / 4},
      {surd(0, 1, 1, 2, 3), M_PI / 6},
      {surd(0, 1, -1, 2, 3), 5 * M_PI / 6},
      {surd(1, 4, 1, 4, 5), M_PI / 5},
      {surd(-1, 4, 1, 4, 5), 2 * M_PI / 5},
      {surd(1, 4, -1, 4, 5), 3 * M_PI / 5},
      {surd(-1, 4, -1, 4, 5), 4 * M_PI / 5},
  };
  for (const Pair& pr : pairs) {
    AngleClass e = classify_exact(pr.cosv);
    AngleClass n = classify_numeric(pr.theta);
    REQUIRE(e.kind == AngleKind::RationalPi);
    REQUIRE(n.kind == AngleKind::RationalPi);
    CHECK(e.p == n.p);
    CHECK(e.q == n.q);
  }
}

TEST_CASE("rotation orders") {
  auto rat = [](long p, long q) {
    AngleClass c;
    c.kind = AngleKind::RationalPi;
    c.p = p;
    c.q = q;
    return c;
  };
  CHECK(rotation_order(rat(0, 1)) == 1);
  CHECK(rotation_order(rat(1, 1)) == 2);
  CHECK(rotation_order(rat(1, 2)) == 4);
  CHECK(rotation_order(rat(1, 3)) == 6);
  CHECK(rotation_order(rat(2, 3)) == 3);
  CHECK(rotation_order(rat(2, 5)) == 5);
  CHECK(rotation_order(rat(1, 5)) == 10);
  CHECK(rotation_order(rat(3, 2)) == 4);
  AngleClass irr;
  irr.kind = AngleKind::IrrationalPi;
  CHECK(rotation_order(irr) == 0);
}

TEST_CASE("spectral angles of special orthogonal matrices") {
  auto s = spectrum_angles(plane_rotation(3, 0, 1, 0.9));
  REQUIRE(s.angles.size() == 1);
  CHECK(s.angles[0] == doctest::Approx(0.9).epsilon(1e-12));
  CHECK(s.plus_one_multiplicity == 1);

  s = spectrum_angles(Eigen::MatrixXd::Identity(4, 4));
  REQUIRE(s.angles.size() == 2);
  CHECK(s.angles[0] == 0.0);
  CHECK(s.angles[1] == 0.0);
  CHECK(s.plus_one_multiplicity == 4);

  Eigen::MatrixXd two_block = plane_rotation(4, 0, 1, 0.7) * plane_rotation(4, 2, 3, 1.3);
  s = spectrum_angles(two_block);
  REQUIRE(s.angles.size() == 2);
  CHECK(s.angles[0] == doctest::Approx(0.7).epsilon(1e-12));
  CHECK(s.angles[1] == doctest::Approx(1.3).epsilon(1e-12));
  CHECK(s.plus_one_multiplicity == 0);

  // Rotation by pi lands on real eigenvalues -1, -1.
  s = spectrum_angles(plane_rotation(3, 0, 1, M_PI));
  REQUIRE(s.angles.size() == 1);
  CHECK(s.angles[0] == doctest::Approx(M_PI));
  CHECK(s.plus_one_multiplicity == 1);

  // Conjugation invariance over a permutation.
  Eigen::MatrixXd P = Eigen::MatrixXd::Zero(4, 4);
  P(0, 2) = P(1, 0) = P(2, 3) = P(3, 1) = 1.0;
  Eigen::MatrixXd conj = P.transpose() * two_block * P;
  auto s2 = spectrum_angles(conj);
  REQUIRE(s2.angles.size() == 2);
  CHECK(s2.angles[0] == doctest::Approx(0.7).epsilon(1e-12));
  CHECK(s2.angles[1] == doctest::Approx(1.3).epsilon(1e-12));

  Eigen::MatrixXd reflect = Eigen::MatrixXd::Identity(3, 3);
  reflect(0, 0) = -1;
  CHECK_THROWS_AS(spectrum_angles(reflect), NormalizationError);
  CHECK_THROWS_AS(spectrum_angles(Eigen::MatrixXd::Constant(3, 3, 0.5)), NormalizationError);
}

TEST_CASE("one-parameter density verdicts") {
  // Rational angle: detected numerically, not dense.
  auto d = dense_in_one_param(plane_rotation(3, 0, 1, M_PI / 3));
  CHECK(d.kind == Density::NotDense);
  REQUIRE(d.classes.size() == 1);
  CHECK(d.classes[0].q == 3);

  // Irrational angle certified through the exact cosine.
  double theta = std::acos(1.0 / 3.0);
  d = dense_in_one_param(plane_rotation(3, 0, 1, theta), {QuadSurd(Rational(1, 3))});
  CHECK(d.kind == Density::Dense);

  // Equal-angle product of two plane rotations at theta = pi/4.
  Eigen::MatrixXd prod = plane_rotation(3, 0, 1, M_PI / 4) * plane_rotation(3, 1, 2, M_PI / 4);
  d = dense_in_one_param(prod, {product_angle_cos_exact(surd(0, 1, 1, 2, 2))});
  CHECK(d.kind == Density::Dense);

  // Without exact data the same matrix stays Unknown.
  d = dense_in_one_param(plane_rotation(3, 0, 1, 1.0));
  CHECK(d.kind == Density::Unknown);

  // Two distinct nonzero angles: criterion inapplicable.
  d = dense_in_one_param(plane_rotation(4, 0, 1, 0.7) * plane_rotation(4, 2, 3, 1.3));
  CHECK(d.kind == Density::Unknown);
  CHECK(d.certificate.find("inapplicable") != std::string::npos);

  // Equal angles on two blocks: single distinct angle, criterion applies.
  d = dense_in_one_param(plane_rotation(4, 0, 1, M_PI / 3) * plane_rotation(4, 2, 3, M_PI / 3));
  CHECK(d.kind == Density::NotDense);

  // Identity: vacuously dense in the trivial subgroup.
  d = dense_in_one_param(Eigen::MatrixXd::Identity(3, 3));
  CHECK(d.kind == Density::Dense);

  CHECK_THROWS_AS(
      dense_in_one_param(plane_rotation(3, 0, 1, 1.0), {QuadSurd(Rational(1, 2))}),
      DomainError);
}

TEST_CASE("angle accessor") {
  AngleClass c;
  c.kind = AngleKind::RationalPi;
  c.p = 3;
  c.q = 4;
  CHECK(c.angle() == doctest::Approx(3 * M_PI / 4));
  AngleClass u;
  CHECK_THROWS_AS(u.angle(), DomainError);
}

TEST_CASE("exact cosine reconstruction from a pi fraction") {
  REQUIRE(exact_cos_pi_fraction(0, 1).has_value());
  CHECK(*exact_cos_pi_fraction(0, 1) == QuadSurd(1));
  CHECK(*exact_cos_pi_fraction(1, 1) == QuadSurd(-1));
  CHECK(*exact_cos_pi_fraction(1, 2) == QuadSurd(0));
  CHECK(*exact_cos_pi_fraction(3, 2) == QuadSurd(0));
  CHECK(*exact_cos_pi_fraction(1, 3) == QuadSurd(Rational(1, 2)));
  CHECK(*exact_cos_pi_fraction(5, 3) == QuadSurd(Rational(1, 2)));
  CHECK(*exact_cos_pi_fraction(2, 3) == QuadSurd(Rational(-1, 2)));
  CHECK(*exact_cos_pi_fraction(1, 4) == QuadSurd(Rational(0), Rational(1, 2), Integer(2)));
  CHECK(*exact_cos_pi_fraction(3, 4) == QuadSurd(Rational(0), Rational(-1, 2), Integer(2)));
  CHECK(*exact_cos_pi_fraction(2, 5) ==
        QuadSurd(Rational(-1, 4), Rational(1, 4), Integer(5)));
  CHECK(*exact_cos_pi_fraction(1, 5) ==
        QuadSurd(Rational(1, 4), Rational(1, 4), Integer(5)));
  CHECK(*exact_cos_pi_fraction(1, 6) == QuadSurd(Rational(0), Rational(1, 2), Integer(3)));

  // Negative and out-of-range numerators normalize mod 2*pi first.
  CHECK(*exact_cos_pi_fraction(-1, 3) == QuadSurd(Rational(1, 2)));
  CHECK(*exact_cos_pi_fraction(13, 3) == QuadSurd(Rational(1, 2)));

  // Degree > 2 cosines have no single-radical form.
  CHECK_FALSE(exact_cos_pi_fraction(1, 7).has_value());
  CHECK_FALSE(exact_cos_pi_fraction(1, 8).has_value());
  CHECK_FALSE(exact_cos_pi_fraction(2, 9).has_value());
  CHECK_THROWS_AS(exact_cos_pi_fraction(1, 0), DomainError);

  // Every reconstructed cosine agrees with the floating value, and feeding it
  // back through exact classification returns the normalized fraction.
  for (long q : {1L, 2L, 3L, 4L, 5L, 6L}) {
    for (long p = 0; p < 2 * q; ++p) {
      auto c = exact_cos_pi_fraction(p, q);
      REQUIRE(c.has_value());
      CHECK(c->to_double() ==
            doctest::Approx(std::cos(M_PI * double(p) / double(q))).epsilon(1e-12));
    }
  }
}
