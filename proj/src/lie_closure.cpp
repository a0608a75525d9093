// Copyright (c) 2026 The sogen authors
// SPDX-License-Identifier: MIT

#include "sogen/lie_closure.hpp"

#include <algorithm>
#include <cmath>

namespace sogen {

Eigen::MatrixXd commutator(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
  return a * b - b * a;
}

QuadMatrix commutator(const QuadMatrix& a, const QuadMatrix& b) { return a * b - b * a; }

Eigen::VectorXd skew_coordinates(const Eigen::MatrixXd& a) {
  int n = static_cast<int>(a.rows());
  Eigen::VectorXd v(n * (n - 1) / 2);
  int m = 0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) v(m++) = a(i, j);
  return v;
}

Eigen::MatrixXd skew_from_coordinates(const Eigen::VectorXd& v, int n) {
  if (v.size() != n * (n - 1) / 2) throw DimensionError("coordinate vector size mismatch");
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
  int m = 0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      a(i, j) = v(m);
      a(j, i) = -v(m);
      ++m;
    }
  return a;
}

namespace {

/// Projects v off the orthonormal rows twice; returns true and appends when
/// the residual stays above rank_tol * scale. `scale` is the reference
/// magnitude of the inputs that produced v, not necessarily v's own norm: a
/// bracket of unit vectors that cancels to rounding noise must be measured
/// against the unit inputs, or the noise direction would count as new.
bool gram_schmidt_add(LieSpan& span, Eigen::VectorXd v, double scale) {
  if (scale <= 0) return false;
  for (int pass = 0; pass < 2; ++pass)
    for (const Eigen::VectorXd& b : span.coords) v -= b.dot(v) * b;
  if (v.norm() <= span.rank_tol * scale) return false;
  v.normalize();
  span.coords.push_back(v);
  span.basis.push_back(skew_from_coordinates(v, span.n));
  return true;
}

}  // namespace

bool LieSpan::contains(const Eigen::MatrixXd& m) const {
  Eigen::VectorXd v = skew_coordinates(m);
  double scale = v.norm();
  if (scale == 0) return true;
  for (int pass = 0; pass < 2; ++pass)
    for (const Eigen::VectorXd& b : coords) v -= b.dot(v) * b;
  return v.norm() <= rank_tol * scale;
}

LieSpan lie_closure(const std::vector<Eigen::MatrixXd>& generators, double rank_tol) {
  LieSpan span;
  span.rank_tol = rank_tol;
  if (generators.empty()) return span;
  span.n = static_cast<int>(generators[0].rows());
  for (const Eigen::MatrixXd& g : generators) {
    if (g.rows() != span.n || g.cols() != span.n)
      throw DimensionError("closure generators must share one square shape");
    if (!is_skew_symmetric(g, 1e-9)) throw NormalizationError("closure generator is not skew");
    gram_schmidt_add(span, skew_coordinates(g), skew_coordinates(g).norm());
  }
  // Worklist over basis pairs; the outer bound grows as brackets land.
  // Basis coordinate vectors are unit, so 1 is the bracket's reference scale.
  for (size_t j = 1; j < span.basis.size() && !span.is_full(); ++j) {
    for (size_t i = 0; i < j && !span.is_full(); ++i) {
      Eigen::MatrixXd c = commutator(span.basis[i], span.basis[j]);
      gram_schmidt_add(span, skew_coordinates(c), 1.0);
    }
  }
  return span;
}

namespace {

/// Fully reduces v against the echelon rows; returns false if v vanishes.
bool exact_reduce(const ExactLieSpan& span, std::vector<QuadSurd>& v) {
  for (size_t r = 0; r < span.rows.size(); ++r) {
    const QuadSurd& lead = v[static_cast<size_t>(span.pivots[r])];
    if (lead.is_zero()) continue;
    QuadSurd f = lead;  // rows have pivot entry 1
    const std::vector<QuadSurd>& row = span.rows[r];
    for (size_t k = 0; k < v.size(); ++k)
      if (!row[k].is_zero()) v[k] -= f * row[k];
  }
  for (const QuadSurd& e : v)
    if (!e.is_zero()) return true;
  return false;
}

std::vector<QuadSurd> exact_coordinates(const QuadMatrix& m) {
  int n = m.rows();
  std::vector<QuadSurd> v;
  v.reserve(static_cast<size_t>(n * (n - 1) / 2));
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) v.push_back(m.at(i, j));
  return v;
}

bool exact_add(ExactLieSpan& span, const QuadMatrix& m) {
  std::vector<QuadSurd> v = exact_coordinates(m);
  if (!exact_reduce(span, v)) return false;
  size_t p = 0;
  while (v[p].is_zero()) ++p;
  QuadSurd inv = v[p];
  for (QuadSurd& e : v) e /= inv;
  // Eliminate the new pivot from the existing rows to keep reduction simple.
  for (size_t r = 0; r < span.rows.size(); ++r) {
    QuadSurd f = span.rows[r][p];
    if (f.is_zero()) continue;
    for (size_t k = 0; k < v.size(); ++k)
      if (!v[k].is_zero()) span.rows[r][k] -= f * v[k];
  }
  span.rows.push_back(std::move(v));
  span.pivots.push_back(static_cast<int>(p));
  span.spanning.push_back(m);
  return true;
}

}  // namespace

bool ExactLieSpan::contains(const QuadMatrix& m) const {
  std::vector<QuadSurd> v = exact_coordinates(m);
  return !exact_reduce(*this, v);
}

ExactLieSpan lie_closure_exact(const std::vector<QuadMatrix>& generators) {
  ExactLieSpan span;
  if (generators.empty()) return span;
  span.n = generators[0].rows();
  for (const QuadMatrix& g : generators) {
    if (g.rows() != span.n || g.cols() != span.n)
      throw DimensionError("closure generators must share one square shape");
    if (!g.is_skew_symmetric()) throw NormalizationError("closure generator is not skew");
    exact_add(span, g);
  }
  for (size_t j = 1; j < span.spanning.size() && !span.is_full(); ++j)
    for (size_t i = 0; i < j && !span.is_full(); ++i)
      exact_add(span, commutator(span.spanning[i], span.spanning[j]));
  return span;
}

BchBasisReport bch_basis_matrix_so3(double theta) {
  double cc = std::pow(std::cos(theta / 2.0), 2);  // cos^2(theta/2)
  double s = 0.5 * std::sin(theta);
  // Specialized equal-angle BCH coefficients: a = b = sin(theta) cc,
  // c = sin^2(theta)/2; scale arcsin(d)/d has a removable singularity at 0.
  double d = std::abs(std::sin(theta)) * std::sqrt(2.0 * cc * cc + s * s);
  double f = d < 1e-9 ? 1.0 : std::asin(std::min(d, 1.0)) / d;
  double pref = f * std::sin(theta);

  Eigen::Matrix3d bare;
  bare << cc, cc, -s, cc, s, cc, s, cc, cc;
  BchBasisReport report;
  report.theta = theta;
  report.matrix = pref * bare;
  report.determinant = report.matrix.determinant();
  report.closed_form_det = bch_closed_form_det(theta);
  return report;
}

double bch_closed_form_det(double theta) {
  double cc = std::pow(std::cos(theta / 2.0), 2);
  double s = 0.5 * std::sin(theta);
  double d = std::abs(std::sin(theta)) * std::sqrt(2.0 * cc * cc + s * s);
  double f = d < 1e-9 ? 1.0 : std::asin(std::min(d, 1.0)) / d;
  double pref = f * std::sin(theta);
  // det of the bare rows [[cc,cc,-s],[cc,s,cc],[s,cc,cc]].
  double bare = s * cc * cc - 2.0 * cc * cc * cc + s * s * s;
  return pref * pref * pref * bare;
}

std::vector<double> scan_function_roots(const std::function<double(double)>& f, double lo,
                                        double hi, int grid_points, double detect_threshold,
                                        double refine_tol) {
  if (grid_points < 2 || hi <= lo) throw DomainError("bad root scan range");
  std::vector<double> roots;
  auto push_root = [&](double r) {
    for (double existing : roots)
      if (std::abs(existing - r) < 1e-7) return;
    roots.push_back(r);
  };

  double step = (hi - lo) / grid_points;
  double prev_x = lo;
  double prev_v = f(lo);
  bool in_dip = false;
  double dip_lo = 0, dip_hi = 0;
  auto flush_dip = [&]() {
    if (!in_dip) return;
    in_dip = false;
    // Ternary-minimize |f| over the dip bracket (handles even-order roots).
    double a = dip_lo, b = dip_hi;
    while (b - a > refine_tol) {
      double m1 = a + (b - a) / 3.0, m2 = b - (b - a) / 3.0;
      if (std::abs(f(m1)) < std::abs(f(m2)))
        b = m2;
      else
        a = m1;
    }
    double r = 0.5 * (a + b);
    // A minimum pinned to the bracket edge is the shoulder of a neighboring
    // sign-change root, not a root of its own.
    if (r - dip_lo > 10 * refine_tol && dip_hi - r > 10 * refine_tol) push_root(r);
  };

  for (int i = 1; i <= grid_points; ++i) {
    double x = lo + i * step;
    double v = f(x);
    if ((prev_v < 0 && v > 0) || (prev_v > 0 && v < 0)) {
      flush_dip();
      double a = prev_x, b = x, fa = prev_v;
      while (b - a > refine_tol) {
        double m = 0.5 * (a + b);
        double fm = f(m);
        if (fm == 0) {
          a = b = m;
          break;
        }
        if ((fa < 0) == (fm < 0)) {
          a = m;
          fa = fm;
        } else {
          b = m;
        }
      }
      push_root(0.5 * (a + b));
    } else if (std::abs(v) < detect_threshold) {
      if (!in_dip) {
        in_dip = true;
        dip_lo = prev_x;
      }
      dip_hi = std::min(x + step, hi);
    } else {
      flush_dip();
    }
    prev_x = x;
    prev_v = v;
  }
  flush_dip();
  std::sort(roots.begin(), roots.end());
  return roots;
}

Eigen::MatrixXd log_special_orthogonal(const Eigen::MatrixXd& r) {
  const long n = r.rows();
  if (r.cols() != n || n < 1) throw DimensionError("log needs a square matrix");
  if ((r.transpose() * r - Eigen::MatrixXd::Identity(n, n)).cwiseAbs().maxCoeff() > 1e-9 ||
      r.determinant() < 0)
    throw NormalizationError("log needs a special orthogonal matrix");

  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
  if (n == 1) return a;
  Eigen::RealSchur<Eigen::MatrixXd> schur(r);
  const Eigen::MatrixXd& t = schur.matrixT();
  const Eigen::MatrixXd& u = schur.matrixU();
  std::vector<long> minus;
  long i = 0;
  while (i < n) {
    if (i + 1 < n && std::abs(t(i + 1, i)) > 1e-10) {
      double s = 0.5 * (t(i, i + 1) - t(i + 1, i));
      double c = 0.5 * (t(i, i) + t(i + 1, i + 1));
      double phi = std::atan2(s, c);
      a(i, i + 1) = phi;
      a(i + 1, i) = -phi;
      i += 2;
    } else {
      if (t(i, i) < 0) minus.push_back(i);
      ++i;
    }
  }
  // -1 eigenvalues come in pairs (det is +1); each pair becomes a rotation by
  // pi in the plane of its two Schur vectors, which works for any pairing.
  for (size_t k = 0; k + 1 < minus.size(); k += 2) {
    a(minus[k], minus[k + 1]) = M_PI;
    a(minus[k + 1], minus[k]) = -M_PI;
  }
  a = (u * a * u.transpose()).eval();
  return 0.5 * (a - a.transpose().eval());
}

Eigen::MatrixXd rotation_generator(int n, int k, int l) {
  if (k < 0 || l <= k || l >= n) throw DimensionError("rotation_generator needs 0 <= k < l < n");
  Eigen::MatrixXd e = Eigen::MatrixXd::Zero(n, n);
  e(k, l) = 1;
  e(l, k) = -1;
  return e;
}

Eigen::MatrixXd plane_rotation(int n, int k, int l, double theta) {
  if (k < 0 || l <= k || l >= n) throw DimensionError("plane_rotation needs 0 <= k < l < n");
  Eigen::MatrixXd r = Eigen::MatrixXd::Identity(n, n);
  double c = std::cos(theta), s = std::sin(theta);
  r(k, k) = c;
  r(k, l) = s;
  r(l, k) = -s;
  r(l, l) = c;
  return r;
}

namespace {

std::optional<Rational> rational_sqrt(const Rational& r) {
  if (sgn(r) < 0) return std::nullopt;
  if (sgn(r) == 0) return Rational(0);
  Integer num = r.get_num(), den = r.get_den();
  if (!mpz_perfect_square_p(num.get_mpz_t()) || !mpz_perfect_square_p(den.get_mpz_t()))
    return std::nullopt;
  Integer rn, rd;
  mpz_sqrt(rn.get_mpz_t(), num.get_mpz_t());
  mpz_sqrt(rd.get_mpz_t(), den.get_mpz_t());
  return Rational(rn, rd);
}

}  // namespace

std::optional<QuadSurd> exact_sin_from_cos(const QuadSurd& cos_theta) {
  QuadSurd s2 = QuadSurd(1) - cos_theta * cos_theta;
  if (s2.sign() < 0) throw DomainError("|cos| > 1 has no sine");
  if (s2.is_rational()) return QuadSurd::sqrt_of_rational(s2.rational_part());
  // Look for sqrt(alpha + beta sqrt(C)) = x + y sqrt(C) with x, y rational:
  // x^2 is a rational root of t^2 - alpha t + beta^2 C / 4.
  const Rational& alpha = s2.rational_part();
  const Rational& beta = s2.surd_coefficient();
  Rational C(s2.radicand());
  Rational disc = alpha * alpha - beta * beta * C;
  auto disc_root = rational_sqrt(disc);
  if (!disc_root) return std::nullopt;
  for (int sign : {1, -1}) {
    Rational t = (alpha + sign * *disc_root) / 2;
    auto x = rational_sqrt(t);
    if (!x || sgn(*x) == 0) continue;
    Rational y = beta / (2 * *x);
    QuadSurd candidate(*x, y, s2.radicand());
    if (candidate * candidate == s2) return candidate.sign() >= 0 ? candidate : -candidate;
  }
  return std::nullopt;
}

std::optional<QuadMatrix> plane_rotation_exact(int n, int k, int l, const QuadSurd& cos_theta) {
  if (k < 0 || l <= k || l >= n) throw DimensionError("plane_rotation needs 0 <= k < l < n");
  auto sin_theta = exact_sin_from_cos(cos_theta);
  if (!sin_theta) return std::nullopt;
  // All entries must live in one quadratic field.
  if (!cos_theta.is_rational() && !sin_theta->is_rational() &&
      sin_theta->radicand() != cos_theta.radicand())
    return std::nullopt;
  QuadMatrix r = QuadMatrix::identity(n);
  r.set(k, k, cos_theta);
  r.set(k, l, *sin_theta);
  r.set(l, k, -*sin_theta);
  r.set(l, l, cos_theta);
  return r;
}

GeneratingSet build_generating_set(int n, double theta) {
  if (n < 3) throw DimensionError("generating set construction needs n >= 3");
  // Base triple in modes {0,1,2}; the inductive step shifts the smaller set
  // into modes {1..n-1} and adds the ladder products touching mode 0.
  std::vector<std::array<int, 4>> pairs = {{0, 1, 0, 2}, {0, 1, 1, 2}, {0, 2, 1, 2}};
  for (int m = 4; m <= n; ++m) {
    std::vector<std::array<int, 4>> next;
    next.reserve(pairs.size() + static_cast<size_t>(m) - 1);
    for (int j = 2; j < m; ++j) next.push_back({0, 1, 1, j});
    next.push_back({0, 2, 1, 2});
    for (const auto& p : pairs) next.push_back({p[0] + 1, p[1] + 1, p[2] + 1, p[3] + 1});
    pairs = std::move(next);
  }
  GeneratingSet set;
  set.n = n;
  set.theta = theta;
  set.pairs = std::move(pairs);
  set.products.reserve(set.pairs.size());
  for (const auto& p : set.pairs)
    set.products.push_back(plane_rotation(n, p[0], p[1], theta) *
                           plane_rotation(n, p[2], p[3], theta));
  return set;
}

Eigen::MatrixXd assemble_p_block(int n, double theta) {
  if (n < 3) throw DimensionError("coupling block needs n >= 3");
  double cc = std::pow(std::cos(theta / 2.0), 2);
  double s = 0.5 * std::sin(theta);
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
  m(0, 0) = -s;
  for (int j = 1; j < n; ++j) m(0, j) = cc;
  m(1, 0) = cc;
  m(1, 1) = s;
  for (int i = 2; i < n; ++i) m(i, i) = s;
  return m;
}

double p_block_determinant(int n, double theta) {
  if (n < 3) throw DimensionError("coupling block needs n >= 3");
  double sin_t = std::sin(theta);
  double cc = std::pow(std::cos(theta / 2.0), 2);
  return -std::pow(0.5 * sin_t, n - 2) * (0.25 * sin_t * sin_t + cc * cc);
}

std::optional<So3Triple> identify_so3_xyz(const LieSpan& span) {
  if (span.dim() != 3) return std::nullopt;
  const auto& B = span.basis;
  // Structure constants in the orthonormal basis.
  double f[3][3][3];
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      Eigen::VectorXd c = skew_coordinates(commutator(B[i], B[j]));
      for (int k = 0; k < 3; ++k) f[i][j][k] = span.coords[k].dot(c);
    }
  Eigen::Matrix3d killing;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      double sum = 0;
      for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b) sum += f[i][a][b] * f[j][b][a];
      killing(i, j) = sum;
    }
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es(killing);
  if (es.eigenvalues().maxCoeff() > -1e-8) return std::nullopt;  // not negative definite
  // M = sqrt(2) (-K)^(-1/2) turns the Killing form into -2I, the value it
  // takes on unit-coefficient plane generators.
  Eigen::Matrix3d inv_sqrt = Eigen::Matrix3d::Zero();
  for (int k = 0; k < 3; ++k)
    inv_sqrt += (1.0 / std::sqrt(-es.eigenvalues()(k))) * es.eigenvectors().col(k) *
                es.eigenvectors().col(k).transpose();
  Eigen::Matrix3d m = std::sqrt(2.0) * inv_sqrt;

  auto build = [&](const Eigen::Matrix3d& mm) {
    std::array<Eigen::MatrixXd, 3> c;
    for (int i = 0; i < 3; ++i) {
      Eigen::MatrixXd acc = Eigen::MatrixXd::Zero(span.n, span.n);
      for (int j = 0; j < 3; ++j) acc += mm(j, i) * B[j];
      c[i] = acc;
    }
    return c;
  };
  auto c = build(m);
  // In a Killing-orthonormal basis the bracket tensor is proportional to the
  // Levi-Civita symbol; a negative proportionality is fixed by a swap.
  Eigen::VectorXd xy = skew_coordinates(commutator(c[0], c[1]));
  Eigen::VectorXd cz = skew_coordinates(c[2]);
  if (xy.dot(cz) < 0) std::swap(c[0], c[1]);

  double residual = std::max((commutator(c[0], c[1]) - c[2]).cwiseAbs().maxCoeff(),
                             std::max((commutator(c[1], c[2]) - c[0]).cwiseAbs().maxCoeff(),
                                      (commutator(c[2], c[0]) - c[1]).cwiseAbs().maxCoeff()));
  if (residual > 1e-10) return std::nullopt;
  return So3Triple{c[0], c[1], c[2], residual};
}

double lemma_dependence_det(const Mat3& a, const Mat3& b, std::array<double, 3>* minors) {
  Eigen::Matrix3d rows;
  rows.row(0) = skew_coordinates(a).transpose();
  rows.row(1) = skew_coordinates(b).transpose();
  rows.row(2) = skew_coordinates(commutator(a, b)).transpose();
  if (minors) {
    (*minors)[0] = rows(0, 1) * rows(1, 2) - rows(0, 2) * rows(1, 1);
    (*minors)[1] = rows(0, 0) * rows(1, 2) - rows(0, 2) * rows(1, 0);
    (*minors)[2] = rows(0, 0) * rows(1, 1) - rows(0, 1) * rows(1, 0);
  }
  return rows.determinant();
}

}  // namespace sogen
