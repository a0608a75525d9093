// Copyright (c) 2026 The sogen authors
// SPDX-License-Identifier: MIT

#pragma once

#include <Eigen/Dense>

#include <vector>

#include "sogen/exact.hpp"

namespace sogen {

/// Dense matrix with entries in one real quadratic field Q(sqrt(c)).
/// The field is the join of the entries' fields; mixing two distinct
/// irrational radicands throws FieldMismatchError (from QuadSurd).
class QuadMatrix {
 public:
  QuadMatrix() : rows_(0), cols_(0), radicand_(1) {}
  QuadMatrix(int rows, int cols);
  static QuadMatrix identity(int n);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  const QuadSurd& at(int i, int j) const { return entries_[index(i, j)]; }
  void set(int i, int j, const QuadSurd& v);
  /// Radicand of the smallest field seen to contain every entry (1 when all
  /// entries are rational; may be a proper superset after overwrites).
  const Integer& radicand() const { return radicand_; }

  QuadMatrix operator+(const QuadMatrix& o) const;
  QuadMatrix operator-(const QuadMatrix& o) const;
  QuadMatrix operator*(const QuadMatrix& o) const;
  QuadMatrix operator-() const;
  QuadMatrix transpose() const;
  QuadMatrix scaled(const QuadSurd& s) const;
  bool operator==(const QuadMatrix& o) const;
  bool operator!=(const QuadMatrix& o) const { return !(*this == o); }

  QuadSurd trace() const;
  bool is_zero() const;
  bool is_identity() const;
  bool is_skew_symmetric() const;
  /// Exact test of M^T M = I (and square shape).
  bool is_orthogonal() const;

  Eigen::MatrixXd to_double() const;

 private:
  size_t index(int i, int j) const;
  void absorb_radicand(const QuadSurd& v);

  int rows_;
  int cols_;
  Integer radicand_;
  std::vector<QuadSurd> entries_;
};

}  // namespace sogen
