// Copyright (c) 2026 The sogen authors
// SPDX-License-Identifier: MIT

#include "sogen/so3.hpp"

#include <algorithm>
#include <cmath>

namespace sogen {

namespace {

double clamp_unit(double v) { return std::clamp(v, -1.0, 1.0); }

}  // namespace

bool is_skew_symmetric(const Eigen::MatrixXd& m, double tol) {
  if (m.rows() != m.cols()) return false;
  return (m + m.transpose()).cwiseAbs().maxCoeff() <= tol;
}

bool is_rotation_matrix(const Eigen::MatrixXd& m, double tol) {
  if (m.rows() != m.cols()) return false;
  Eigen::MatrixXd gram = m.transpose() * m;
  gram.diagonal().array() -= 1.0;
  if (gram.cwiseAbs().maxCoeff() > tol) return false;
  return m.determinant() > 0.0;
}

double skew_norm(const Eigen::MatrixXd& x) { return std::sqrt(0.5 * x.squaredNorm()); }

Mat3 hat(const Vec3& w) {
  Mat3 x;
  x << 0, -w.z(), w.y(), w.z(), 0, -w.x(), -w.y(), w.x(), 0;
  return x;
}

Vec3 unhat(const Mat3& x) { return Vec3(x(2, 1), x(0, 2), x(1, 0)); }

Vec3 canonical_axis(const Vec3& v, double tol) {
  for (int i = 0; i < 3; ++i) {
    if (std::abs(v(i)) > tol) return v(i) > 0 ? v : Vec3(-v);
  }
  return v;
}

Mat3 exp_so3(const Mat3& skew) {
  if (!is_skew_symmetric(skew, 1e-12))
    throw NormalizationError("exp_so3 input is not skew-symmetric");
  double theta = skew_norm(skew);
  double a, b;
  if (theta < 1e-4) {
    double t2 = theta * theta;
    a = 1.0 - t2 / 6.0 + t2 * t2 / 120.0;
    b = 0.5 - t2 / 24.0 + t2 * t2 / 720.0;
  } else {
    a = std::sin(theta) / theta;
    b = (1.0 - std::cos(theta)) / (theta * theta);
  }
  return Mat3::Identity() + a * skew + b * (skew * skew);
}

Mat3 log_so3(const Mat3& rotation) {
  if (!is_rotation_matrix(rotation, 1e-9))
    throw NormalizationError("log_so3 input is not a rotation matrix");
  double theta = std::acos(clamp_unit((rotation.trace() - 1.0) / 2.0));
  if (theta > M_PI - 1e-6)
    throw BranchError("rotation angle within 1e-6 of pi: logarithm branch undefined");
  // X = theta / (2 sin(theta)) * (R - R^T); the factor has a removable
  // singularity at theta = 0.
  double f;
  if (theta < 1e-4) {
    double t2 = theta * theta;
    f = 0.5 * (1.0 + t2 / 6.0 + 7.0 * t2 * t2 / 360.0);
  } else {
    f = 0.5 * theta / std::sin(theta);
  }
  return f * (rotation - rotation.transpose());
}

AxisAngle axis_angle(const Mat3& rotation) {
  if (!is_rotation_matrix(rotation, 1e-9))
    throw NormalizationError("axis_angle input is not a rotation matrix");
  double theta = std::acos(clamp_unit((rotation.trace() - 1.0) / 2.0));
  if (theta < 1e-8) return {Vec3(0, 0, 1), theta};
  Vec3 axis;
  if (theta < 3.0 * M_PI / 4.0) {
    axis = unhat(rotation - rotation.transpose()).normalized();
  } else {
    // Near pi the antisymmetric part degenerates; recover the axis from the
    // symmetric part, (sym(R) - cos(theta) I) / (1 - cos(theta)) = a a^T.
    double c = std::cos(theta);
    Mat3 outer = (0.5 * (rotation + rotation.transpose()) - c * Mat3::Identity()) / (1.0 - c);
    int imax = 0;
    outer.diagonal().maxCoeff(&imax);
    axis = outer.col(imax) / std::sqrt(std::max(outer(imax, imax), 1e-300));
    axis.normalize();
    // Align with the antisymmetric part when it still carries signal.
    Vec3 anti = unhat(rotation - rotation.transpose());
    if (anti.norm() > 1e-12 && anti.dot(axis) < 0) axis = -axis;
  }
  return {canonical_axis(axis), theta};
}

Mat3 bch_orthogonal(const Mat3& x, const Mat3& y) {
  if (!is_skew_symmetric(x, 1e-12) || !is_skew_symmetric(y, 1e-12))
    throw NormalizationError("bch_orthogonal inputs must be skew-symmetric");
  double theta = skew_norm(x);
  double phi = skew_norm(y);
  if (theta < 1e-14) return y;
  if (phi < 1e-14) return x;
  double inner = 0.5 * (x.transpose() * y).trace();
  if (std::abs(inner) > 1e-9 * theta * phi)
    throw OrthogonalityError("bch_orthogonal inputs are not trace-orthogonal");

  double a = std::sin(theta) * std::pow(std::cos(phi / 2.0), 2);
  double b = std::sin(phi) * std::pow(std::cos(theta / 2.0), 2);
  double c = 0.5 * std::sin(theta) * std::sin(phi);
  double d = std::sqrt(a * a + b * b + c * c);
  if (d >= 1.0 - 1e-12)
    throw BranchError("bch_orthogonal: sin of the product angle reaches 1 within tolerance");

  // d equals sin(alpha) for the product angle alpha; recover alpha from the
  // half-angle product w = cos(theta/2)cos(phi/2), which also fixes the sign
  // of the axis direction beyond alpha = pi/2.
  double w = std::cos(theta / 2.0) * std::cos(phi / 2.0);
  double alpha = std::acos(clamp_unit(2.0 * w * w - 1.0));
  if (alpha >= M_PI - 1e-6)
    throw BranchError("bch_orthogonal: product angle within 1e-6 of pi");
  if (d < 1e-14) return x + y;  // both angles vanishingly small
  double scale = (w >= 0 ? 1.0 : -1.0) * alpha / d;
  Mat3 bracket = x * y - y * x;
  return scale * ((a / theta) * x + (b / phi) * y + (c / (theta * phi)) * bracket);
}

double product_angle_cos(double cos_theta) {
  return cos_theta + (cos_theta * cos_theta - 1.0) / 2.0;
}

double product_angle(double theta) {
  return std::acos(clamp_unit(product_angle_cos(std::cos(theta))));
}

QuadSurd product_angle_cos_exact(const QuadSurd& cos_theta) {
  QuadSurd half(Rational(1, 2));
  return cos_theta + (cos_theta * cos_theta - QuadSurd(1)) * half;
}

}  // namespace sogen
