// Copyright (c) 2026 The sogen authors
// SPDX-License-Identifier: MIT

#pragma once

#include <Eigen/Dense>

#include <array>
#include <functional>
#include <optional>
#include <vector>

#include "sogen/exact_matrix.hpp"
#include "sogen/so3.hpp"

namespace sogen {

Eigen::MatrixXd commutator(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b);
QuadMatrix commutator(const QuadMatrix& a, const QuadMatrix& b);

/// Coordinates of a skew matrix: the strict upper triangle stacked row by
/// row (dimension n(n-1)/2). The Euclidean dot of coordinates equals the
/// trace form tr(A^T B)/2.
Eigen::VectorXd skew_coordinates(const Eigen::MatrixXd& a);
Eigen::MatrixXd skew_from_coordinates(const Eigen::VectorXd& v, int n);

/// Span of skew matrices closed under the bracket, tracked by a twice
/// re-orthogonalized modified Gram-Schmidt basis. A candidate whose residual
/// after projection is at most rank_tol times its own norm is dependent.
struct LieSpan {
  int n = 0;
  double rank_tol = 1e-8;
  std::vector<Eigen::VectorXd> coords;
  std::vector<Eigen::MatrixXd> basis;

  int dim() const { return static_cast<int>(coords.size()); }
  int ambient_dim() const { return n * (n - 1) / 2; }
  bool is_full() const { return dim() == ambient_dim(); }
  bool contains(const Eigen::MatrixXd& m) const;
};

/// Smallest bracket-closed subspace containing the generators.
/// NormalizationError for non-skew input, DimensionError on shape mismatch.
LieSpan lie_closure(const std::vector<Eigen::MatrixXd>& generators, double rank_tol = 1e-8);

/// Exact analogue over one quadratic field: rows are reduced-echelon
/// coordinate vectors, so the dimension is certified, not estimated.
struct ExactLieSpan {
  int n = 0;
  std::vector<std::vector<QuadSurd>> rows;
  std::vector<int> pivots;
  std::vector<QuadMatrix> spanning;

  int dim() const { return static_cast<int>(rows.size()); }
  int ambient_dim() const { return n * (n - 1) / 2; }
  bool is_full() const { return dim() == ambient_dim(); }
  bool contains(const QuadMatrix& m) const;
};

ExactLieSpan lie_closure_exact(const std::vector<QuadMatrix>& generators);

/// Coefficient matrix, in the plane-generator basis of so(3), of the three
/// closed-form BCH combinations of the equal-angle products in crossing
/// planes. Its determinant (reported alongside the closed form) witnesses
/// linear independence of the product logarithms.
struct BchBasisReport {
  double theta;
  Eigen::Matrix3d matrix;
  double determinant;
  double closed_form_det;
};

BchBasisReport bch_basis_matrix_so3(double theta);
double bch_closed_form_det(double theta);

/// Roots of a scalar function on [lo, hi]: sign changes are bisected and
/// sub-threshold flat dips (even-order roots) are ternary-minimized, then
/// deduplicated. refine_tol is the final bracketing width.
std::vector<double> scan_function_roots(const std::function<double(double)>& f, double lo,
                                        double hi, int grid_points, double detect_threshold,
                                        double refine_tol);

/// Principal logarithm of a special orthogonal matrix of any size: a skew A
/// with exp(A) = R whose plane angles lie in [0, pi]. Eigenvalue -1 pairs
/// (angle pi) admit many pairings into planes; one valid branch is returned.
/// NormalizationError if R is not special orthogonal within 1e-9.
Eigen::MatrixXd log_special_orthogonal(const Eigen::MatrixXd& r);

/// E_kl = e_k e_l^T - e_l e_k^T (0-based, k < l).
Eigen::MatrixXd rotation_generator(int n, int k, int l);
/// exp(theta E_kl): the planar rotation [[cos, sin], [-sin, cos]] in modes
/// k, l.
Eigen::MatrixXd plane_rotation(int n, int k, int l, double theta);

/// Nonnegative sqrt(1 - cos^2) when it is expressible with a single radical;
/// nullopt when the sine needs a nested one. DomainError for |cos| > 1.
std::optional<QuadSurd> exact_sin_from_cos(const QuadSurd& cos_theta);
/// Exact plane rotation, available only when sine and cosine share one
/// quadratic field.
std::optional<QuadMatrix> plane_rotation_exact(int n, int k, int l, const QuadSurd& cos_theta);

/// The n(n-1)/2 products of two plane rotations used to replace individual
/// plane rotations when the angle is a rational multiple of pi. Pairs hold
/// 0-based plane indices (k1, l1, k2, l2) for the product R_{k1 l1} R_{k2 l2}.
struct GeneratingSet {
  int n;
  double theta;
  std::vector<std::array<int, 4>> pairs;
  std::vector<Eigen::MatrixXd> products;
};

GeneratingSet build_generating_set(int n, double theta);

/// Ladder coupling block whose nonvanishing determinant propagates linear
/// independence from dimension n-1 to n. Closed form:
/// -(1/2)^(n-2) sin^(n-2)(theta) (sin^2(theta)/4 + cos^4(theta/2)).
Eigen::MatrixXd assemble_p_block(int n, double theta);
double p_block_determinant(int n, double theta);

/// Orthogonal triple spanning a 3-dimensional span with so(3) brackets
/// [X,Y]=Z, [Y,Z]=X, [Z,X]=Y, found by normalizing the Killing form.
struct So3Triple {
  Eigen::MatrixXd x, y, z;
  double bracket_residual;
};

/// Returns the triple when the span is a copy of so(3) (dimension 3,
/// negative-definite Killing form, brackets verified to 1e-10).
std::optional<So3Triple> identify_so3_xyz(const LieSpan& span);

/// det[coords(A); coords(B); coords([A,B])] for 3x3 skew A, B, which equals
/// minus the sum of squared third-row cofactor minors; optionally reports
/// those minors.
double lemma_dependence_det(const Mat3& a, const Mat3& b, std::array<double, 3>* minors = nullptr);

}  // namespace sogen
