// Copyright (c) 2026 The sogen authors
// SPDX-License-Identifier: MIT

#include "sogen/perm_orbit.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace sogen {

namespace {

void require_square(const Eigen::MatrixXd& M, const char* who) {
  if (M.rows() != M.cols()) {
    throw DimensionError(std::string(who) + ": matrix must be square");
  }
}

void require_modes(int m, int target_n, const std::vector<int>& modes) {
  if (static_cast<int>(modes.size()) != m) {
    throw IndexError("embed: subset size does not match the matrix dimension");
  }
  if (target_n < m) {
    throw IndexError("embed: target dimension smaller than the matrix");
  }
  for (size_t i = 0; i < modes.size(); ++i) {
    if (modes[i] < 0 || modes[i] >= target_n) {
      throw IndexError("embed: mode index out of range");
    }
    if (i > 0 && modes[i] <= modes[i - 1]) {
      throw IndexError("embed: modes must be strictly increasing");
    }
  }
}

}  // namespace

std::vector<std::vector<int>> mode_permutations(int m, int cap) {
  if (m < 1) throw SizeError("mode_permutations: need at least one mode");
  if (m > cap) {
    throw SizeError("mode_permutations: " + std::to_string(m) +
                    " modes exceed the enumeration cap of " + std::to_string(cap));
  }
  std::vector<int> mapping(m);
  std::iota(mapping.begin(), mapping.end(), 0);
  std::vector<std::vector<int>> out;
  do {
    out.push_back(mapping);
  } while (std::next_permutation(mapping.begin(), mapping.end()));
  return out;
}

Eigen::MatrixXd permutation_matrix(const std::vector<int>& mapping) {
  const int m = static_cast<int>(mapping.size());
  std::vector<bool> seen(m, false);
  for (int v : mapping) {
    if (v < 0 || v >= m || seen[v]) {
      throw IndexError("permutation_matrix: mapping is not a bijection");
    }
    seen[v] = true;
  }
  Eigen::MatrixXd P = Eigen::MatrixXd::Zero(m, m);
  for (int i = 0; i < m; ++i) P(mapping[i], i) = 1.0;
  return P;
}

OrbitSet orbit(const Eigen::MatrixXd& O, double dedup_tol, int cap) {
  require_square(O, "orbit");
  const int m = static_cast<int>(O.rows());

  OrbitSet result;
  result.base = O;
  const Eigen::MatrixXd inverse = O.transpose();
  bool all_near_base_or_inverse = true;

  for (const std::vector<int>& sigma : mode_permutations(m, cap)) {
    // (P^T O P)(i, j) = O(sigma(i), sigma(j)); no need to materialize P.
    Eigen::MatrixXd conj(m, m);
    for (int i = 0; i < m; ++i) {
      for (int j = 0; j < m; ++j) conj(i, j) = O(sigma[i], sigma[j]);
    }
    bool fresh = true;
    for (const Eigen::MatrixXd& known : result.elements) {
      if ((conj - known).cwiseAbs().maxCoeff() < dedup_tol) {
        fresh = false;
        break;
      }
    }
    if (!fresh) continue;
    result.elements.push_back(conj);
    if ((conj - O).cwiseAbs().maxCoeff() >= dedup_tol &&
        (conj - inverse).cwiseAbs().maxCoeff() >= dedup_tol) {
      all_near_base_or_inverse = false;
    }
  }
  result.trivial = all_near_base_or_inverse;
  return result;
}

OrbitSetExact orbit_exact(const QuadMatrix& O, int cap) {
  if (O.rows() != O.cols()) throw DimensionError("orbit_exact: matrix must be square");
  const int m = O.rows();

  OrbitSetExact result;
  result.base = O;
  const QuadMatrix inverse = O.transpose();
  bool all_base_or_inverse = true;

  for (const std::vector<int>& sigma : mode_permutations(m, cap)) {
    QuadMatrix conj(m, m);
    for (int i = 0; i < m; ++i) {
      for (int j = 0; j < m; ++j) conj.set(i, j, O.at(sigma[i], sigma[j]));
    }
    bool fresh = true;
    for (const QuadMatrix& known : result.elements) {
      if (conj == known) {
        fresh = false;
        break;
      }
    }
    if (!fresh) continue;
    result.elements.push_back(conj);
    if (conj != O && conj != inverse) all_base_or_inverse = false;
  }
  result.trivial = all_base_or_inverse;
  return result;
}

bool is_trivial_action(const Mat3& A, double* distance, double direction_tol) {
  Eigen::Vector3d v(A(0, 1), A(0, 2), A(1, 2));
  const double norm = v.norm();
  if (norm == 0.0) {
    throw NormalizationError("is_trivial_action: zero matrix has no direction");
  }
  v /= norm;
  const Eigen::Vector3d axis = Eigen::Vector3d(1.0, -1.0, 1.0).normalized();
  const double perp = (v - v.dot(axis) * axis).norm();
  if (distance != nullptr) *distance = perp;
  return perp < direction_tol;
}

bool is_trivial_action_exact(const QuadMatrix& A) {
  if (A.rows() != 3 || A.cols() != 3) {
    throw DimensionError("is_trivial_action_exact: expected a 3x3 matrix");
  }
  return A.at(0, 1) == A.at(1, 2) && A.at(0, 2) == -A.at(0, 1);
}

Eigen::MatrixXd embed(const Eigen::MatrixXd& M, int target_n,
                      const std::vector<int>& modes, EmbedKind kind) {
  require_square(M, "embed");
  const int m = static_cast<int>(M.rows());
  require_modes(m, target_n, modes);

  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(target_n, target_n);
  if (kind == EmbedKind::Rotation) out.setIdentity();
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) out(modes[i], modes[j]) = M(i, j);
  }
  return out;
}

QuadMatrix embed(const QuadMatrix& M, int target_n, const std::vector<int>& modes,
                 EmbedKind kind) {
  if (M.rows() != M.cols()) throw DimensionError("embed: matrix must be square");
  const int m = M.rows();
  require_modes(m, target_n, modes);

  QuadMatrix out =
      kind == EmbedKind::Rotation ? QuadMatrix::identity(target_n) : QuadMatrix(target_n, target_n);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) out.set(modes[i], modes[j], M.at(i, j));
  }
  return out;
}

std::vector<std::vector<int>> mode_subsets(int n, int m) {
  if (m < 0 || m > n) throw SizeError("mode_subsets: need 0 <= m <= n");
  std::vector<std::vector<int>> out;
  std::vector<int> pick(m);
  std::iota(pick.begin(), pick.end(), 0);
  while (true) {
    out.push_back(pick);
    int i = m - 1;
    while (i >= 0 && pick[i] == n - m + i) --i;
    if (i < 0) break;
    ++pick[i];
    for (int j = i + 1; j < m; ++j) pick[j] = pick[j - 1] + 1;
  }
  return out;
}

std::vector<Eigen::MatrixXd> all_embeddings(const Eigen::MatrixXd& M, int target_n,
                                            EmbedKind kind) {
  require_square(M, "all_embeddings");
  std::vector<Eigen::MatrixXd> out;
  for (const std::vector<int>& modes : mode_subsets(target_n, static_cast<int>(M.rows()))) {
    out.push_back(embed(M, target_n, modes, kind));
  }
  return out;
}

std::vector<QuadMatrix> all_embeddings(const QuadMatrix& M, int target_n, EmbedKind kind) {
  std::vector<QuadMatrix> out;
  for (const std::vector<int>& modes : mode_subsets(target_n, M.rows())) {
    out.push_back(embed(M, target_n, modes, kind));
  }
  return out;
}

}  // namespace sogen
