// Copyright (c) 2026 The sogen authors
// SPDX-License-Identifier: MIT

#pragma once

#include <Eigen/Dense>

#include "sogen/errors.hpp"
#include "sogen/exact.hpp"

namespace sogen {

using Mat3 = Eigen::Matrix3d;
using Vec3 = Eigen::Vector3d;

struct AxisAngle {
  Vec3 axis;
  double angle;
};

bool is_skew_symmetric(const Eigen::MatrixXd& m, double tol = 1e-12);
bool is_rotation_matrix(const Eigen::MatrixXd& m, double tol = 1e-12);

/// sqrt(tr(X^T X) / 2); for a 3x3 skew matrix this is the rotation angle of
/// its exponential (the Euclidean norm of the axis vector).
double skew_norm(const Eigen::MatrixXd& x);

/// Standard hat map: exp(hat(w)) rotates by |w| about w.
Mat3 hat(const Vec3& w);
Vec3 unhat(const Mat3& x);

/// Flips the sign so the first component of magnitude above tol is positive.
Vec3 canonical_axis(const Vec3& v, double tol = 1e-12);

/// Rodrigues exponential. NormalizationError if the input is not skew.
Mat3 exp_so3(const Mat3& skew);

/// Principal logarithm, valid for rotation angles in [0, pi). BranchError
/// within 1e-6 of pi, NormalizationError if the input is not a rotation.
Mat3 log_so3(const Mat3& rotation);

/// Axis (canonical sign) and angle in [0, pi]. Total: the angle-pi case is
/// resolved through the symmetric part of the rotation. The axis of the
/// identity is reported as e3 by convention.
AxisAngle axis_angle(const Mat3& rotation);

/// Closed-form BCH combination log(exp(X) exp(Y)) for trace-orthogonal skew
/// X, Y. OrthogonalityError when tr(X^T Y) is not ~0; BranchError when the
/// combination leaves the principal branch (see log_so3) or the sine of the
/// product angle reaches 1 within 1e-12 of the formula's root singularity.
Mat3 bch_orthogonal(const Mat3& x, const Mat3& y);

/// Rotation angle in [0, pi] of exp(theta E12) exp(theta E13) (equal-angle
/// generators in crossing planes): cos(alpha) = cos(theta) + (cos^2(theta)-1)/2.
double product_angle(double theta);
double product_angle_cos(double cos_theta);
QuadSurd product_angle_cos_exact(const QuadSurd& cos_theta);

}  // namespace sogen
