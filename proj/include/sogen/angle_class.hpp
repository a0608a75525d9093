// Copyright (c) 2026 The sogen authors
// SPDX-License-Identifier: MIT

#pragma once

#include <Eigen/Dense>
#include <optional>
#include <string>
#include <vector>

#include "sogen/errors.hpp"
#include "sogen/exact.hpp"

namespace sogen {

enum class AngleKind { RationalPi, IrrationalPi, Unknown };

/// Stable lowercase tag for documents and certificates: "rational-pi",
/// "irrational-pi", or "unknown".
std::string angle_kind_name(AngleKind kind);

/// Verdict on whether an angle is a rational multiple of pi, together with
/// the textual trail that justifies it (minimal polynomial and cyclotomic
/// index, a refutation, or a continued-fraction convergent).
struct AngleClass {
  AngleKind kind = AngleKind::Unknown;
  // Valid for RationalPi: theta = p*pi/q with gcd(p, q) = 1 and 0 <= p < 2q.
  long p = 0;
  long q = 1;
  std::string certificate;

  bool is_rational() const { return kind == AngleKind::RationalPi; }
  bool is_irrational() const { return kind == AngleKind::IrrationalPi; }
  /// Angle value in radians for the rational kind.
  double angle() const;
};

/// Exact classification from the exact cosine: the angle is a rational
/// multiple of pi iff the minimal polynomial of exp(i*theta) is cyclotomic.
/// Returns the principal representative (theta in [0, pi]).
/// DomainError when |cos_theta| > 1.
AngleClass classify_exact(const QuadSurd& cos_theta);

/// Numeric classification by continued-fraction expansion of theta/pi.
/// Returns RationalPi when a convergent p/q with q <= q_max lies within tol,
/// Unknown otherwise; floating input can never certify IrrationalPi.
AngleClass classify_numeric(double theta, long q_max = 10000, double tol = 1e-9);

/// Order of a rotation by the classified angle: smallest n >= 1 with
/// n*theta = 0 (mod 2*pi), or 0 when the angle is not rational-pi (infinite
/// order).
long rotation_order(const AngleClass& c);

/// Exact cosine of theta = p*pi/q when it lies in a single quadratic field
/// (the reduced cyclotomic index falls in the small table); nullopt for the
/// deeper algebraic cosines, e.g. cos(pi/7). DomainError for q < 1.
std::optional<QuadSurd> exact_cos_pi_fraction(long p, long q);

/// Rotation angles phi_k in [0, pi] extracted from the eigenvalue pairs
/// exp(+-i*phi_k) of a special orthogonal matrix; +1 eigenvalues pair up as
/// zero angles (one left over when N is odd).
struct SpectrumAngles {
  std::vector<double> angles;  // ascending, length floor(N/2)
  int plus_one_multiplicity = 0;
};

/// NormalizationError if R is not special orthogonal within 1e-9.
SpectrumAngles spectrum_angles(const Eigen::MatrixXd& R);

enum class Density { Dense, NotDense, Unknown };

/// Outcome of the one-parameter density test for the cyclic group generated
/// by one rotation inside its own one-parameter subgroup.
struct DensityCheck {
  Density kind = Density::Unknown;
  std::vector<AngleClass> classes;  // one per distinct nonzero spectral angle
  std::string certificate;
};

/// Powers of R are dense in {exp(t*log R)} iff the (single) nonzero spectral
/// angle is an irrational multiple of pi. When the spectrum carries two or
/// more distinct nonzero angles the criterion is inapplicable as stated
/// (rational relations between the angles can shrink the closure) and the
/// result is Unknown. Provide the exact cosine of the nonzero angle to allow
/// an exact classification; otherwise numeric classification applies and
/// Dense is unreachable.
DensityCheck dense_in_one_param(const Eigen::MatrixXd& R,
                                const std::vector<QuadSurd>& exact_cosines = {});

}  // namespace sogen
