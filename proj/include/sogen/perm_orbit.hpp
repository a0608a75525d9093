// Copyright (c) 2026 The sogen authors
// SPDX-License-Identifier: MIT

#pragma once

#include <Eigen/Dense>
#include <vector>

#include "sogen/errors.hpp"
#include "sogen/exact_matrix.hpp"
#include "sogen/so3.hpp"

namespace sogen {

/// All m! permutations of {0..m-1} in lexicographic order.
/// SizeError when m exceeds the enumeration cap.
std::vector<std::vector<int>> mode_permutations(int m, int cap = 8);

/// P with P*e_i = e_{mapping[i]}. IndexError unless mapping is a bijection.
Eigen::MatrixXd permutation_matrix(const std::vector<int>& mapping);

/// The conjugation orbit of one matrix under all mode permutations,
/// deduplicated. trivial holds when the orbit is contained in {O, O^-1}.
struct OrbitSet {
  Eigen::MatrixXd base;
  std::vector<Eigen::MatrixXd> elements;
  bool trivial = false;
};

/// Enumerates P^T O P over all m! permutations; elements deduplicate by
/// max-norm distance < dedup_tol and keep first-seen order (base first).
/// SizeError above the cap.
OrbitSet orbit(const Eigen::MatrixXd& O, double dedup_tol = 1e-9, int cap = 8);

struct OrbitSetExact {
  QuadMatrix base;
  std::vector<QuadMatrix> elements;
  bool trivial = false;

  OrbitSetExact() : base(1, 1) {}
};

/// Exact-equality variant of orbit for matrices over one quadratic field.
OrbitSetExact orbit_exact(const QuadMatrix& O, int cap = 8);

/// Whether the coefficient vector (a12, a13, a23) of a normalized 3x3 skew
/// matrix is parallel to the permutation-invariant direction (1, -1, 1),
/// which makes the orbit of its exponential collapse to {O, O^-1}.
/// The perpendicular distance of the normalized coefficient vector is
/// reported through `distance` when non-null, so borderline floating calls
/// can escalate to exact mode. NormalizationError on the zero matrix.
bool is_trivial_action(const Mat3& A, double* distance = nullptr,
                       double direction_tol = 1e-9);

/// Exact counterpart: a12 = a23 = -a13 exactly. The zero matrix satisfies
/// the equalities degenerately; callers reject it beforehand.
bool is_trivial_action_exact(const QuadMatrix& A);

enum class EmbedKind { Rotation, Skew };

/// Places an m x m matrix on the chosen modes of a target_n x target_n
/// matrix; the remaining diagonal is 1 for rotations and 0 for skew
/// matrices. IndexError unless modes is strictly increasing, in range, and
/// of matching size.
Eigen::MatrixXd embed(const Eigen::MatrixXd& M, int target_n,
                      const std::vector<int>& modes, EmbedKind kind);
QuadMatrix embed(const QuadMatrix& M, int target_n, const std::vector<int>& modes,
                 EmbedKind kind);

/// All C(n, m) size-m subsets of {0..n-1} in lexicographic order.
std::vector<std::vector<int>> mode_subsets(int n, int m);

/// Embeddings of M over every size-m mode subset, lexicographic.
std::vector<Eigen::MatrixXd> all_embeddings(const Eigen::MatrixXd& M, int target_n,
                                            EmbedKind kind);
std::vector<QuadMatrix> all_embeddings(const QuadMatrix& M, int target_n, EmbedKind kind);

}  // namespace sogen
