// Copyright (c) 2026 The sogen authors
// SPDX-License-Identifier: MIT

#include "sogen/exact_matrix.hpp"

#include "sogen/errors.hpp"

namespace sogen {

QuadMatrix::QuadMatrix(int rows, int cols) : rows_(rows), cols_(cols), radicand_(1) {
  if (rows < 0 || cols < 0) throw DimensionError("negative matrix dimension");
  entries_.assign(static_cast<size_t>(rows) * static_cast<size_t>(cols), QuadSurd());
}

QuadMatrix QuadMatrix::identity(int n) {
  QuadMatrix m(n, n);
  for (int i = 0; i < n; ++i) m.set(i, i, QuadSurd(1));
  return m;
}

size_t QuadMatrix::index(int i, int j) const {
  if (i < 0 || i >= rows_ || j < 0 || j >= cols_)
    throw DimensionError("matrix index out of range");
  return static_cast<size_t>(i) * static_cast<size_t>(cols_) + static_cast<size_t>(j);
}

void QuadMatrix::absorb_radicand(const QuadSurd& v) {
  if (v.is_rational()) return;
  if (radicand_ == 1) {
    radicand_ = v.radicand();
  } else if (radicand_ != v.radicand()) {
    throw FieldMismatchError("matrix entries from distinct quadratic fields: sqrt(" +
                             radicand_.get_str() + ") vs sqrt(" + v.radicand().get_str() + ")");
  }
}

void QuadMatrix::set(int i, int j, const QuadSurd& v) {
  absorb_radicand(v);
  entries_[index(i, j)] = v;
}

QuadMatrix QuadMatrix::operator+(const QuadMatrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw DimensionError("matrix shape mismatch in +");
  QuadMatrix r(rows_, cols_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) r.set(i, j, at(i, j) + o.at(i, j));
  return r;
}

QuadMatrix QuadMatrix::operator-(const QuadMatrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw DimensionError("matrix shape mismatch in -");
  QuadMatrix r(rows_, cols_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) r.set(i, j, at(i, j) - o.at(i, j));
  return r;
}

QuadMatrix QuadMatrix::operator*(const QuadMatrix& o) const {
  if (cols_ != o.rows_) throw DimensionError("matrix shape mismatch in *");
  QuadMatrix r(rows_, o.cols_);
  for (int i = 0; i < rows_; ++i) {
    for (int k = 0; k < cols_; ++k) {
      const QuadSurd& lhs = at(i, k);
      if (lhs.is_zero()) continue;
      for (int j = 0; j < o.cols_; ++j) {
        const QuadSurd& rhs = o.at(k, j);
        if (rhs.is_zero()) continue;
        r.set(i, j, r.at(i, j) + lhs * rhs);
      }
    }
  }
  return r;
}

QuadMatrix QuadMatrix::operator-() const {
  QuadMatrix r(rows_, cols_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) r.set(i, j, -at(i, j));
  return r;
}

QuadMatrix QuadMatrix::transpose() const {
  QuadMatrix r(cols_, rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) r.set(j, i, at(i, j));
  return r;
}

QuadMatrix QuadMatrix::scaled(const QuadSurd& s) const {
  QuadMatrix r(rows_, cols_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) r.set(i, j, at(i, j) * s);
  return r;
}

bool QuadMatrix::operator==(const QuadMatrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) return false;
  for (size_t k = 0; k < entries_.size(); ++k)
    if (entries_[k] != o.entries_[k]) return false;
  return true;
}

QuadSurd QuadMatrix::trace() const {
  if (rows_ != cols_) throw DimensionError("trace of a non-square matrix");
  QuadSurd t;
  for (int i = 0; i < rows_; ++i) t += at(i, i);
  return t;
}

bool QuadMatrix::is_zero() const {
  for (const QuadSurd& e : entries_)
    if (!e.is_zero()) return false;
  return true;
}

bool QuadMatrix::is_identity() const {
  if (rows_ != cols_) return false;
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) {
      if (i == j ? at(i, j) != QuadSurd(1) : !at(i, j).is_zero()) return false;
    }
  return true;
}

bool QuadMatrix::is_skew_symmetric() const {
  if (rows_ != cols_) return false;
  for (int i = 0; i < rows_; ++i)
    for (int j = i; j < cols_; ++j)
      if ((at(i, j) + at(j, i)).sign() != 0) return false;
  return true;
}

bool QuadMatrix::is_orthogonal() const {
  if (rows_ != cols_) return false;
  return (transpose() * *this).is_identity();
}

Eigen::MatrixXd QuadMatrix::to_double() const {
  Eigen::MatrixXd m(rows_, cols_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) m(i, j) = at(i, j).to_double();
  return m;
}

}  // namespace sogen
