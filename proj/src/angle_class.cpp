// Copyright (c) 2026 The sogen authors
// SPDX-License-Identifier: MIT

#include "sogen/angle_class.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "sogen/polynomial.hpp"

namespace sogen {

namespace {

/// Exact cos(2*pi*k/n) for the n with phi(n) <= 4, i.e. every index that a
/// degree <= 4 minimal polynomial can produce. k is coprime to n, k <= n/2.
QuadSurd exact_cos_root_of_unity(long n, long k) {
  switch (n) {
    case 1:
      return QuadSurd(1);
    case 2:
      return QuadSurd(-1);
    case 3:
      return QuadSurd(Rational(-1, 2));
    case 4:
      return QuadSurd(0);
    case 5:
      return QuadSurd(Rational(-1, 4), k == 1 ? Rational(1, 4) : Rational(-1, 4), Integer(5));
    case 6:
      return QuadSurd(Rational(1, 2));
    case 8:
      return QuadSurd(Rational(0), k == 1 ? Rational(1, 2) : Rational(-1, 2), Integer(2));
    case 10:
      return QuadSurd(Rational(1, 4), k == 1 ? Rational(1, 4) : Rational(-1, 4), Integer(5));
    case 12:
      return QuadSurd(Rational(0), k == 1 ? Rational(1, 2) : Rational(-1, 2), Integer(3));
    default:
      throw DomainError("no exact cosine table for cyclotomic index " + std::to_string(n));
  }
}

std::string rational_pi_str(long p, long q) {
  std::ostringstream os;
  if (p == 0)
    os << "0";
  else if (q == 1)
    os << p << "*pi";
  else
    os << p << "/" << q << "*pi";
  return os.str();
}

}  // namespace

double AngleClass::angle() const {
  if (kind != AngleKind::RationalPi) throw DomainError("angle() needs a RationalPi class");
  return M_PI * static_cast<double>(p) / static_cast<double>(q);
}

std::string angle_kind_name(AngleKind kind) {
  switch (kind) {
    case AngleKind::RationalPi:
      return "rational-pi";
    case AngleKind::IrrationalPi:
      return "irrational-pi";
    case AngleKind::Unknown:
      return "unknown";
  }
  return "unknown";
}

AngleClass classify_exact(const QuadSurd& cos_theta) {
  if ((QuadSurd(1) - cos_theta * cos_theta).sign() < 0)
    throw DomainError("|cos| > 1 is not a cosine");
  AngleClass out;
  Polynomial m = min_poly_unit_complex(cos_theta);
  std::ostringstream cert;
  cert << "cos(theta) = " << cos_theta.str() << "; minimal polynomial of exp(i*theta) is "
       << m.str();
  auto index = is_cyclotomic(m);
  if (!index) {
    out.kind = AngleKind::IrrationalPi;
    if (!m.has_integer_coefficients())
      cert << ", which has a non-integer coefficient and is therefore not cyclotomic";
    else
      cert << ", which matches no cyclotomic polynomial of its degree";
    cert << "; theta is an irrational multiple of pi";
    out.certificate = cert.str();
    return out;
  }
  long n = *index;
  cert << " = Phi_" << n;
  // exp(i*theta) is a primitive n-th root of unity: theta = 2*pi*k/n for some
  // k coprime to n. The cosine pins k up to sign; report the principal angle.
  long hit = -1;
  if (n == 1) {
    hit = 0;
  } else {
    for (long k = 1; 2 * k <= n; ++k) {
      if (std::gcd(k, n) != 1) continue;
      if (exact_cos_root_of_unity(n, k) == cos_theta) {
        hit = k;
        break;
      }
    }
  }
  if (hit < 0) throw DomainError("cyclotomic index recovered but no primitive angle matches");
  long p = 2 * hit, q = n;
  long g = std::gcd(p, q);
  if (g > 0) {
    p /= g;
    q /= g;
  }
  if (p == 0) q = 1;
  out.kind = AngleKind::RationalPi;
  out.p = p;
  out.q = q;
  cert << "; theta = " << rational_pi_str(p, q);
  out.certificate = cert.str();
  return out;
}

std::optional<QuadSurd> exact_cos_pi_fraction(long p, long q) {
  if (q < 1) throw DomainError("pi fraction needs a positive denominator");
  long two_q = 2 * q;
  p %= two_q;
  if (p < 0) p += two_q;
  long g = std::gcd(p, two_q);
  long n = two_q / g;
  long k = p / g;
  // cos(p*pi/q) = cos(2*pi*k/n) with k coprime to n; fold onto k <= n/2.
  if (2 * k > n) k = n - k;
  switch (n) {
    case 1:
    case 2:
    case 3:
    case 4:
    case 5:
    case 6:
    case 8:
    case 10:
    case 12:
      return exact_cos_root_of_unity(n, k);
    default:
      return std::nullopt;
  }
}

AngleClass classify_numeric(double theta, long q_max, double tol) {
  if (q_max < 1 || tol <= 0) throw DomainError("classify_numeric needs q_max >= 1 and tol > 0");
  AngleClass out;
  double t = std::fmod(theta / M_PI, 2.0);
  if (t < 0) t += 2.0;

  // Walk the continued-fraction convergents of theta/pi; they are the best
  // rational approximations, so the first one inside tol is the answer.
  long p_prev = 1, q_prev = 0;
  long p_cur = static_cast<long>(std::floor(t));
  long q_cur = 1;
  double frac = t - std::floor(t);
  for (int iter = 0; iter < 64; ++iter) {
    if (q_cur > q_max) break;
    double err = std::abs(t - static_cast<double>(p_cur) / static_cast<double>(q_cur));
    if (err < tol) {
      long p = p_cur % (2 * q_cur);
      long q = q_cur;
      if (p == 0) q = 1;
      out.kind = AngleKind::RationalPi;
      out.p = p;
      out.q = q;
      std::ostringstream cert;
      cert << "continued-fraction convergent " << p_cur << "/" << q_cur << " of theta/pi ("
           << "|error| = " << err << " < " << tol << "); theta = " << rational_pi_str(p, q);
      out.certificate = cert.str();
      return out;
    }
    if (frac < 1e-15) break;
    double x = 1.0 / frac;
    double a_real = std::floor(x);
    if (a_real > 2.0 * static_cast<double>(q_max)) break;
    long a = static_cast<long>(a_real);
    long p_next = a * p_cur + p_prev;
    long q_next = a * q_cur + q_prev;
    p_prev = p_cur;
    q_prev = q_cur;
    p_cur = p_next;
    q_cur = q_next;
    frac = x - a_real;
  }
  out.kind = AngleKind::Unknown;
  std::ostringstream cert;
  cert << "no continued-fraction convergent of theta/pi with denominator <= " << q_max
       << " lies within " << tol << "; floating data cannot certify irrationality";
  out.certificate = cert.str();
  return out;
}

long rotation_order(const AngleClass& c) {
  if (c.kind != AngleKind::RationalPi) return 0;
  return 2 * c.q / std::gcd(c.p, 2 * c.q);
}

SpectrumAngles spectrum_angles(const Eigen::MatrixXd& R) {
  const long n = R.rows();
  if (R.cols() != n || n < 1) throw DimensionError("spectrum_angles needs a square matrix");
  if ((R.transpose() * R - Eigen::MatrixXd::Identity(n, n)).cwiseAbs().maxCoeff() > 1e-9 ||
      R.determinant() < 0)
    throw NormalizationError("spectrum_angles needs a special orthogonal matrix");

  SpectrumAngles out;
  if (n == 1) return out;
  Eigen::RealSchur<Eigen::MatrixXd> schur(R);
  const Eigen::MatrixXd& T = schur.matrixT();
  int plus = 0, minus = 0;
  long i = 0;
  while (i < n) {
    if (i + 1 < n && std::abs(T(i + 1, i)) > 1e-10) {
      double c = 0.5 * (T(i, i) + T(i + 1, i + 1));
      out.angles.push_back(std::acos(std::clamp(c, -1.0, 1.0)));
      i += 2;
    } else {
      if (T(i, i) > 0)
        ++plus;
      else
        ++minus;
      ++i;
    }
  }
  // Real eigenvalues of a rotation are +-1; -1 comes in pairs (det = +1),
  // each pair a rotation by pi, and +1 pairs are zero-angle planes.
  for (int k = 0; k + 1 < minus; k += 2) out.angles.push_back(M_PI);
  for (int k = 0; k + 1 < plus; k += 2) out.angles.push_back(0.0);
  out.plus_one_multiplicity = plus;
  std::sort(out.angles.begin(), out.angles.end());
  return out;
}

DensityCheck dense_in_one_param(const Eigen::MatrixXd& R,
                                const std::vector<QuadSurd>& exact_cosines) {
  DensityCheck out;
  SpectrumAngles spec = spectrum_angles(R);
  const double angle_tol = 1e-9;
  std::vector<double> distinct;
  for (double a : spec.angles) {
    if (a < angle_tol) continue;
    bool seen = false;
    for (double d : distinct) seen = seen || std::abs(d - a) < angle_tol;
    if (!seen) distinct.push_back(a);
  }
  if (distinct.empty()) {
    out.kind = Density::Dense;
    out.certificate =
        "spectrum has no nonzero angle: the one-parameter subgroup is trivial and the "
        "density claim is vacuous";
    return out;
  }
  if (distinct.size() > 1) {
    out.kind = Density::Unknown;
    std::ostringstream cert;
    cert << "spectrum carries " << distinct.size()
         << " distinct nonzero angles; the single-angle density criterion is inapplicable "
            "(rational relations between angles can shrink the closure)";
    out.certificate = cert.str();
    return out;
  }
  double phi = distinct[0];
  AngleClass cls;
  if (!exact_cosines.empty()) {
    if (std::abs(exact_cosines[0].to_double() - std::cos(phi)) > 1e-6)
      throw DomainError("supplied exact cosine disagrees with the spectral angle");
    cls = classify_exact(exact_cosines[0]);
  } else {
    cls = classify_numeric(phi);
  }
  out.classes.push_back(cls);
  std::ostringstream cert;
  switch (cls.kind) {
    case AngleKind::RationalPi:
      out.kind = Density::NotDense;
      cert << "spectral angle " << rational_pi_str(cls.p, cls.q)
           << " is a rational multiple of pi: powers of the rotation cycle with period "
           << rotation_order(cls) << " instead of filling the one-parameter subgroup";
      break;
    case AngleKind::IrrationalPi:
      out.kind = Density::Dense;
      cert << "the single nonzero spectral angle is an irrational multiple of pi: powers "
              "of the rotation are dense in its one-parameter subgroup";
      break;
    case AngleKind::Unknown:
      out.kind = Density::Unknown;
      cert << "the spectral angle resisted rational-multiple detection; density undecided";
      break;
  }
  cert << " [" << cls.certificate << "]";
  out.certificate = cert.str();
  return out;
}

}  // namespace sogen
