// Copyright (c) 2026 The sogen authors
// SPDX-License-Identifier: MIT

#include "sogen/engine.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>

#include "sogen/lie_closure.hpp"
#include "sogen/perm_orbit.hpp"

namespace sogen {

namespace {

std::string pi_fraction_str(long p, long q) {
  std::ostringstream os;
  if (p == 0)
    os << "0";
  else if (q == 1)
    os << (p == 1 ? "" : std::to_string(p) + "*") << "pi";
  else
    os << p << "/" << q << "*pi";
  return os.str();
}

std::string density_name(Density d) {
  switch (d) {
    case Density::Dense:
      return "dense";
    case Density::NotDense:
      return "not-dense";
    case Density::Unknown:
      return "unknown";
  }
  return "unknown";
}

CertStep angle_step(const std::string& role, const AngleSpec& spec, const AngleClass& cls,
                    const EngineConfig& cfg) {
  CertStep s;
  s.name = "angle-class";
  s.labels["role"] = role;
  s.labels["kind"] = angle_kind_name(cls.kind);
  s.labels["source"] = spec.form_name();
  s.labels["certificate"] = cls.certificate;
  s.scalars["theta"] = spec.value();
  if (cls.kind == AngleKind::RationalPi) {
    s.scalars["p"] = static_cast<double>(cls.p);
    s.scalars["q"] = static_cast<double>(cls.q);
  }
  if (spec.form_name() == "numeric") {
    s.scalars["q_max"] = static_cast<double>(cfg.q_max);
    s.scalars["tol"] = cfg.angle_tol;
  }
  if (auto c = spec.cosine()) s.labels["cos"] = c->str();
  std::ostringstream note;
  note << role << " classified " << angle_kind_name(cls.kind);
  if (cls.kind == AngleKind::RationalPi) note << " = " << pi_fraction_str(cls.p, cls.q);
  s.note = note.str();
  return s;
}

CertStep closure_step(std::vector<Eigen::MatrixXd> gens, const LieSpan& span, double rank_tol,
                      const std::string& note, const std::string& mode = "numeric") {
  CertStep s;
  s.name = "lie-closure";
  s.note = note;
  s.scalars["dim"] = span.dim();
  s.scalars["ambient"] = span.ambient_dim();
  s.scalars["rank_tol"] = rank_tol;
  s.scalars["full"] = span.is_full() ? 1 : 0;
  s.labels["mode"] = mode;
  s.matrices = std::move(gens);
  return s;
}

CertStep density_step(const Eigen::MatrixXd& r, const DensityCheck& dc,
                      const std::optional<QuadSurd>& exact_cos, const std::string& note) {
  CertStep s;
  s.name = "spectrum-density";
  s.note = note;
  s.labels["density"] = density_name(dc.kind);
  s.labels["certificate"] = dc.certificate;
  if (exact_cos) s.labels["cos"] = exact_cos->str();
  s.matrices.push_back(r);
  return s;
}

CertStep toral_step(int closure_dim, int n) {
  CertStep s;
  s.name = "toral-bound";
  s.scalars["closure_dim"] = closure_dim;
  s.scalars["max_torus"] = n / 2;
  s.scalars["ambient"] = n * (n - 1) / 2;
  s.note =
      "the topological closure of the generated group is a connected subgroup whose "
      "dimension exceeds the bracket closure by at most the maximal torus rank; the sum "
      "stays below the full algebra dimension, so the group cannot be dense";
  return s;
}

CertStep note_step(const std::string& name, const std::string& note) {
  CertStep s;
  s.name = name;
  s.note = note;
  return s;
}

bool is_signed_permutation(const Eigen::MatrixXd& o, double tol) {
  const long n = o.rows();
  for (long i = 0; i < n; ++i) {
    int hits = 0;
    for (long j = 0; j < n; ++j) {
      double a = std::abs(o(i, j));
      if (a <= tol) continue;
      if (std::abs(a - 1.0) > tol) return false;
      ++hits;
    }
    if (hits != 1) return false;
  }
  return true;
}

/// Detects a rotation that differs from the identity on exactly one
/// coordinate plane; returns (k, l, theta in (-pi, pi]).
struct PlanePattern {
  int k, l;
  double theta;
};

std::optional<PlanePattern> plane_pattern(const Eigen::MatrixXd& o, double tol) {
  const long n = o.rows();
  std::vector<int> active;
  for (long i = 0; i < n && active.size() <= 2; ++i) {
    bool moved = std::abs(o(i, i) - 1.0) > tol;
    for (long j = 0; j < n && !moved; ++j) moved = i != j && std::abs(o(i, j)) > tol;
    if (moved) active.push_back(static_cast<int>(i));
  }
  if (active.size() != 2) return std::nullopt;
  int k = active[0], l = active[1];
  double c = 0.5 * (o(k, k) + o(l, l));
  double sn = 0.5 * (o(k, l) - o(l, k));
  if (std::abs(o(k, k) - o(l, l)) > tol || std::abs(o(k, l) + o(l, k)) > tol)
    return std::nullopt;
  return PlanePattern{k, l, std::atan2(sn, c)};
}

/// Closure of the rotation block algebras over every 3-mode subset: records
/// that a dense block on one triple conjugates to every triple and that the
/// blocks together span the full algebra.
void append_triple_extension(UniversalityVerdict& v, int n_modes, const EngineConfig& cfg) {
  std::vector<Eigen::MatrixXd> gens;
  for (const auto& t : mode_subsets(n_modes, 3))
    for (int k = 0; k < 3; ++k)
      for (int l = k + 1; l < 3; ++l)
        gens.push_back(embed(rotation_generator(3, k, l), n_modes, t, EmbedKind::Skew));
  LieSpan span = lie_closure(gens, cfg.rank_tol);
  v.certificate.push_back(closure_step(
      std::move(gens), span, cfg.rank_tol,
      "rotation block algebras over all 3-mode subsets span the full algebra"));
  v.certificate.push_back(note_step(
      "m-n-extension",
      "a dense rotation block on one mode triple, conjugated through every mode subset, "
      "generates a group whose closure carries the full algebra"));
}

/// Nearest small-denominator fraction, used to recognize exact values that
/// arrive through floating arithmetic.
std::optional<Rational> snap_rational(double x, long max_den, double tol) {
  long best_p = 0, best_q = 1;
  double best_err = std::abs(x);
  for (long q = 1; q <= max_den; ++q) {
    long p = std::lround(x * static_cast<double>(q));
    double err = std::abs(x - static_cast<double>(p) / static_cast<double>(q));
    if (err < best_err) {
      best_err = err;
      best_p = p;
      best_q = q;
    }
  }
  if (best_err > tol) return std::nullopt;
  Rational r(best_p, best_q);
  r.canonicalize();
  return r;
}

double step_scalar(const CertStep& s, const std::string& key) {
  auto it = s.scalars.find(key);
  if (it == s.scalars.end()) throw DomainError("certificate step lacks scalar '" + key + "'");
  return it->second;
}

std::string step_label(const CertStep& s, const std::string& key) {
  auto it = s.labels.find(key);
  if (it == s.labels.end()) throw DomainError("certificate step lacks label '" + key + "'");
  return it->second;
}

}  // namespace

// ---------------------------------------------------------------------------
// AngleSpec

AngleSpec AngleSpec::radians(double theta) {
  if (!std::isfinite(theta)) throw DomainError("angle must be finite");
  AngleSpec s;
  s.form_ = Form::Radians;
  s.theta_ = theta;
  return s;
}

AngleSpec AngleSpec::pi_fraction(long p, long q) {
  if (q < 1) throw DomainError("pi fraction needs a positive denominator");
  long two_q = 2 * q;
  p %= two_q;
  if (p < 0) p += two_q;
  long g = std::gcd(p, q);
  if (g > 1) {
    p /= g;
    q /= g;
  }
  if (p == 0) q = 1;
  AngleSpec s;
  s.form_ = Form::PiFraction;
  s.p_ = p;
  s.q_ = q;
  s.theta_ = M_PI * static_cast<double>(p) / static_cast<double>(q);
  return s;
}

AngleSpec AngleSpec::exact_cosine(const QuadSurd& cos_theta) {
  if ((QuadSurd(1) - cos_theta * cos_theta).sign() < 0)
    throw DomainError("|cos| > 1 is not a cosine");
  AngleSpec s;
  s.form_ = Form::ExactCos;
  s.cos_ = cos_theta;
  s.theta_ = std::acos(std::clamp(cos_theta.to_double(), -1.0, 1.0));
  return s;
}

double AngleSpec::value() const { return theta_; }

std::optional<QuadSurd> AngleSpec::cosine() const {
  switch (form_) {
    case Form::ExactCos:
      return cos_;
    case Form::PiFraction:
      return exact_cos_pi_fraction(p_, q_);
    case Form::Radians:
      return std::nullopt;
  }
  return std::nullopt;
}

AngleClass AngleSpec::classify(const EngineConfig& cfg) const {
  switch (form_) {
    case Form::PiFraction: {
      AngleClass out;
      out.kind = AngleKind::RationalPi;
      out.p = p_;
      out.q = q_;
      out.certificate = "theta given exactly as " + pi_fraction_str(p_, q_);
      return out;
    }
    case Form::ExactCos:
      return classify_exact(*cos_);
    case Form::Radians:
      return classify_numeric(theta_, cfg.q_max, cfg.angle_tol);
  }
  throw DomainError("unreachable angle form");
}

std::string AngleSpec::form_name() const {
  switch (form_) {
    case Form::PiFraction:
      return "pi-fraction";
    case Form::ExactCos:
      return "exact-cosine";
    case Form::Radians:
      return "numeric";
  }
  return "numeric";
}

std::string verdict_kind_name(VerdictKind k) {
  switch (k) {
    case VerdictKind::Universal:
      return "Universal";
    case VerdictKind::NotUniversal:
      return "NotUniversal";
    case VerdictKind::Inconclusive:
      return "Inconclusive";
  }
  return "Inconclusive";
}

// ---------------------------------------------------------------------------
// Geodetic table

GeodeticTable GeodeticTable::builtin() {
  GeodeticTable t;
  t.entries = {Rational(0), Rational(1, 2), Rational(1)};
  return t;
}

GeodeticTable GeodeticTable::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read geodetic table: " + path);
  GeodeticTable t;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream is(line);
    std::string token;
    if (!(is >> token)) continue;
    std::string extra;
    if (is >> extra)
      throw ConfigError("geodetic table line " + std::to_string(lineno) +
                        ": one fraction per line");
    Rational r;
    try {
      r = parse_rational(token);
    } catch (const std::exception& e) {
      throw ConfigError("geodetic table line " + std::to_string(lineno) + ": " + e.what());
    }
    if (r < 0 || r > 1)
      throw ConfigError("geodetic table line " + std::to_string(lineno) +
                        ": squared sine must lie in [0, 1]");
    r.canonicalize();
    t.entries.push_back(r);
  }
  return t;
}

GeodeticTable GeodeticTable::resolve(const EngineConfig& cfg) {
  if (cfg.geodetic_table_path.empty()) return builtin();
  return load(cfg.geodetic_table_path);
}

bool geodetic_supports_relations(const Rational& sin_sq_alpha, const GeodeticTable& table) {
  if (sin_sq_alpha < 0 || sin_sq_alpha > 1)
    throw DomainError("squared sine must lie in [0, 1]");
  Rational probe = sin_sq_alpha;
  probe.canonicalize();
  for (const auto& e : table.entries)
    if (e == probe) return true;
  return false;
}

// ---------------------------------------------------------------------------
// Two-rotation density criterion

CrsResult crs_dense(const CrsContext& ctx) {
  if (ctx.order1 <= 0 || ctx.order2 <= 0)
    throw PreconditionError("the density criterion needs two finite rotation orders");
  if (ctx.separation.kind != AngleKind::RationalPi)
    throw PreconditionError(
        "the density criterion needs the axis separation classified as a rational multiple "
        "of pi");
  long p = ctx.separation.p, q = ctx.separation.q;
  if (p == 0 || p == q || p > q)
    throw PreconditionError("axis separation must lie strictly between 0 and pi");

  CrsResult out;
  if (ctx.order1 == 1 || ctx.order2 == 1) {
    out.exception_tag = "identity";
    out.note = "a generator is the identity rotation; the criterion is silent";
    return out;
  }
  if ((ctx.order1 == 2 || ctx.order2 == 2) && p == 1 && q == 2) {
    out.exception_tag = "half-turn at right angle";
    out.note = "a half turn about an orthogonal axis; the criterion is silent";
    return out;
  }
  if (4 % ctx.order1 == 0 && 4 % ctx.order2 == 0) {
    out.exception_tag = "orders divide four";
    out.note = "both orders divide four; the criterion is silent";
    return out;
  }
  out.dense = true;
  std::ostringstream os;
  os << "orders (" << ctx.order1 << ", " << ctx.order2 << ") at separation "
     << pi_fraction_str(p, q)
     << " fall outside every exceptional family: the generated group is dense in the "
        "rotations of the shared 3-space";
  out.note = os.str();
  return out;
}

// ---------------------------------------------------------------------------
// Two-mode beamsplitters

UniversalityVerdict check_two_mode(const AngleSpec& theta, int n_modes,
                                   const EngineConfig& cfg) {
  if (n_modes < 3) throw DimensionError("universality needs at least 3 modes");
  UniversalityVerdict v;
  v.modes_available = n_modes;
  AngleClass cls = theta.classify(cfg);
  v.certificate.push_back(angle_step("mixing angle", theta, cls, cfg));

  if (cls.kind == AngleKind::RationalPi && (cls.q == 1 || cls.q == 2)) {
    v.kind = VerdictKind::NotUniversal;
    v.reason = "excluded angle: the beamsplitter acts as a signed mode permutation";
    CertStep s = note_step("excluded-angle",
                           "at multiples of pi/2 every orbit element is a signed mode "
                           "permutation, so the generated group is finite");
    s.labels["angle"] = pi_fraction_str(cls.p, cls.q);
    v.certificate.push_back(std::move(s));
    return v;
  }
  if (cls.kind == AngleKind::Unknown) {
    v.kind = VerdictKind::Inconclusive;
    v.reason =
        "mixing angle resists classification: no small rational fraction of pi within "
        "tolerance, and floating input cannot certify irrationality";
    return v;
  }

  if (cls.kind == AngleKind::IrrationalPi) {
    // Direct route: with an irrational angle every orbit element alone fills
    // its one-parameter subgroup, and one rotation per mode pair already
    // spans the full algebra.
    double th = theta.value();
    Eigen::MatrixXd r01 = plane_rotation(n_modes, 0, 1, th);
    v.certificate.push_back(note_step(
        "orbit-note", "the permutation orbit holds the same rotation in every mode pair, "
                      "in both senses"));
    DensityCheck dc = dense_in_one_param(r01, {*theta.cosine()});
    v.certificate.push_back(density_step(r01, dc, theta.cosine(),
                                         "one representative; all orbit elements are "
                                         "permutation conjugates with the same spectrum"));
    CertStep logstep;
    logstep.name = "principal-logs";
    logstep.note = "principal logarithms of one rotation per mode pair";
    std::vector<Eigen::MatrixXd> logs;
    for (int k = 0; k < n_modes; ++k)
      for (int l = k + 1; l < n_modes; ++l) {
        Eigen::MatrixXd r = plane_rotation(n_modes, k, l, th);
        Eigen::MatrixXd a = log_special_orthogonal(r);
        logstep.matrices.push_back(r);
        logstep.matrices.push_back(a);
        logs.push_back(std::move(a));
      }
    v.certificate.push_back(std::move(logstep));
    LieSpan span = lie_closure(logs, cfg.rank_tol);
    v.certificate.push_back(closure_step(std::move(logs), span, cfg.rank_tol,
                                         "plane generators in every mode pair span the "
                                         "full algebra"));
    if (dc.kind == Density::Dense && span.is_full()) {
      v.kind = VerdictKind::Universal;
      v.reason =
          "every orbit element fills its one-parameter subgroup densely and the "
          "logarithms span the full algebra";
    } else {
      v.kind = VerdictKind::Inconclusive;
      v.reason = "direct route failed an internal check unexpectedly";
    }
    return v;
  }

  // Rational and not excluded: the plane rotations have finite order, so they
  // are replaced by crossing-plane products whose angle is irrational.
  double th = cls.angle();
  std::optional<QuadSurd> cosx = theta.cosine();
  if (!cosx) cosx = exact_cos_pi_fraction(cls.p, cls.q);

  if (cosx) {
    GeneratingSet gs = build_generating_set(n_modes, th);
    {
      CertStep s;
      s.name = "generating-set";
      s.scalars["n"] = n_modes;
      s.scalars["theta"] = th;
      s.scalars["size"] = static_cast<double>(gs.products.size());
      s.note = "crossing-plane products replacing the finite-order plane rotations";
      v.certificate.push_back(std::move(s));
    }
    double detv, closed;
    if (n_modes == 3) {
      BchBasisReport rep = bch_basis_matrix_so3(th);
      detv = rep.determinant;
      closed = rep.closed_form_det;
    } else {
      detv = assemble_p_block(n_modes, th).determinant();
      closed = p_block_determinant(n_modes, th);
    }
    {
      CertStep s;
      s.name = "basis-determinant";
      s.scalars["n"] = n_modes;
      s.scalars["theta"] = th;
      s.scalars["value"] = detv;
      s.scalars["closed_form"] = closed;
      s.note = "nonvanishing coupling determinant: the product logarithms are linearly "
               "independent";
      v.certificate.push_back(std::move(s));
    }
    if (std::abs(detv) <= 1e-9) {
      v.kind = VerdictKind::Inconclusive;
      v.reason = "coupling determinant vanished unexpectedly away from the excluded angles";
      return v;
    }
    QuadSurd ca = product_angle_cos_exact(*cosx);
    {
      CertStep s;
      s.name = "product-angle";
      s.labels["cos_theta"] = cosx->str();
      s.labels["cos_alpha"] = ca.str();
      s.note = "exact cosine of the crossing-plane product angle";
      v.certificate.push_back(std::move(s));
    }
    AngleClass pa = classify_exact(ca);
    v.certificate.push_back(angle_step("product angle", AngleSpec::exact_cosine(ca), pa, cfg));
    if (pa.kind != AngleKind::IrrationalPi) {
      v.kind = VerdictKind::Inconclusive;
      v.reason = "product angle unexpectedly classified " + angle_kind_name(pa.kind);
      return v;
    }
    DensityCheck dc = dense_in_one_param(gs.products.front(), {ca});
    v.certificate.push_back(density_step(gs.products.front(), dc, ca,
                                         "one product representative; the products are "
                                         "mutually conjugate under mode permutations"));
    CertStep logstep;
    logstep.name = "principal-logs";
    logstep.note = "principal logarithms of the crossing-plane products";
    std::vector<Eigen::MatrixXd> logs;
    for (const auto& p : gs.products) {
      Eigen::MatrixXd a = log_special_orthogonal(p);
      logstep.matrices.push_back(p);
      logstep.matrices.push_back(a);
      logs.push_back(std::move(a));
    }
    v.certificate.push_back(std::move(logstep));
    LieSpan span = lie_closure(logs, cfg.rank_tol);
    v.certificate.push_back(closure_step(std::move(logs), span, cfg.rank_tol,
                                         "product logarithms span the full algebra"));
    if (dc.kind == Density::Dense && span.is_full()) {
      v.kind = VerdictKind::Universal;
      v.reason =
          "crossing-plane substitution yields dense one-parameter subgroups whose "
          "logarithms span the full algebra";
    } else {
      v.kind = VerdictKind::Inconclusive;
      v.reason = "substitution route failed an internal check unexpectedly";
    }
    return v;
  }

  // The reduced fraction has no quadratic cosine, so the product angle cannot
  // be certified exactly. Fall back to the finite-order criterion: two orbit
  // elements in crossing planes rotate their shared 3-space about exactly
  // orthogonal coordinate axes.
  long order = rotation_order(cls);
  Mat3 a01 = (th * rotation_generator(3, 0, 1)).eval();
  Mat3 a02 = (th * rotation_generator(3, 0, 2)).eval();
  AxisAngle rot1 = axis_angle(exp_so3(a01));
  AxisAngle rot2 = axis_angle(exp_so3(a02));
  {
    CertStep s;
    s.name = "axis-separation";
    s.scalars["cos_alpha"] = rot1.axis.dot(rot2.axis);
    s.matrices.push_back(rot1.axis);
    s.matrices.push_back(rot2.axis);
    s.note = "the two plane rotations share one mode; their axes in the common 3-space "
             "are orthogonal coordinate directions";
    v.certificate.push_back(std::move(s));
  }
  CrsContext ctx;
  ctx.rot1 = rot1;
  ctx.rot2 = rot2;
  ctx.separation = classify_exact(QuadSurd(0));
  ctx.separation_cos = QuadSurd(0);
  ctx.order1 = order;
  ctx.order2 = order;
  CrsResult cr = crs_dense(ctx);
  {
    CertStep s;
    s.name = "crs-density";
    s.scalars["order1"] = static_cast<double>(order);
    s.scalars["order2"] = static_cast<double>(order);
    s.scalars["p"] = static_cast<double>(ctx.separation.p);
    s.scalars["q"] = static_cast<double>(ctx.separation.q);
    s.scalars["dense"] = cr.dense ? 1 : 0;
    if (!cr.dense) s.labels["exception"] = cr.exception_tag;
    s.note = cr.note;
    v.certificate.push_back(std::move(s));
  }
  if (!cr.dense) {
    v.kind = VerdictKind::Inconclusive;
    v.reason = "the substituted pair lands in an exceptional finite-order family (" +
               cr.exception_tag + ")";
    return v;
  }
  append_triple_extension(v, n_modes, cfg);
  v.kind = VerdictKind::Universal;
  v.reason = "a dense rotation block on three modes extends through every mode subset";
  return v;
}

// ---------------------------------------------------------------------------
// Three-mode generators

namespace {

std::vector<std::pair<std::string, Mat3>> conjugate_directions(const Mat3& dir,
                                                               double dedup_tol) {
  std::vector<std::pair<std::string, Mat3>> out;
  for (const auto& perm : mode_permutations(3)) {
    Eigen::MatrixXd p = permutation_matrix(perm);
    Mat3 c = (p.transpose() * dir * p).eval();
    bool seen = false;
    for (const auto& e : out) seen = seen || (e.second - c).cwiseAbs().maxCoeff() < dedup_tol;
    if (seen) continue;
    std::ostringstream name;
    name << "(" << perm[0] << " " << perm[1] << " " << perm[2] << ")";
    out.emplace_back(name.str(), c);
  }
  return out;
}

UniversalityVerdict trivial_direction_verdict(UniversalityVerdict v, const Mat3& dir,
                                              const AngleClass& cls, double theta_value,
                                              int n, const EngineConfig& cfg) {
  Mat3 r3 = exp_so3((theta_value * dir).eval());
  if (n == 3) {
    OrbitSet orb = orbit(r3, cfg.dedup_tol);
    CertStep s;
    s.name = "orbit";
    s.scalars["size"] = static_cast<double>(orb.elements.size());
    s.scalars["trivial"] = orb.trivial ? 1 : 0;
    s.scalars["dedup_tol"] = cfg.dedup_tol;
    s.matrices.push_back(r3);
    s.note = "every permutation conjugate equals the rotation or its inverse";
    v.certificate.push_back(std::move(s));
    std::vector<Eigen::MatrixXd> gens = {dir};
    LieSpan span = lie_closure(gens, cfg.rank_tol);
    v.certificate.push_back(closure_step(std::move(gens), span, cfg.rank_tol,
                                         "the orbit logarithms span one direction"));
    v.certificate.push_back(toral_step(span.dim(), 3));
    v.kind = VerdictKind::NotUniversal;
    v.reason = "the orbit collapses to one rotation and its inverse: the group stays in "
               "a single one-parameter subgroup";
    return v;
  }

  if (n == 4) {
    Eigen::MatrixXd r4 = embed(r3, 4, {0, 1, 2}, EmbedKind::Rotation);
    OrbitSet orb = orbit(r4, cfg.dedup_tol);
    {
      CertStep s;
      s.name = "orbit";
      s.scalars["size"] = static_cast<double>(orb.elements.size());
      s.scalars["trivial"] = orb.trivial ? 1 : 0;
      s.scalars["dedup_tol"] = cfg.dedup_tol;
      s.matrices.push_back(r4);
      s.note = "the conjugates pair off into one rotation block per mode triple";
      v.certificate.push_back(std::move(s));
    }
    CertStep logstep;
    logstep.name = "principal-logs";
    logstep.note = "principal logarithms of the orbit";
    std::vector<Eigen::MatrixXd> logs;
    for (const auto& e : orb.elements) {
      Eigen::MatrixXd a = log_special_orthogonal(e);
      logstep.matrices.push_back(e);
      logstep.matrices.push_back(a);
      logs.push_back(std::move(a));
    }
    v.certificate.push_back(std::move(logstep));
    LieSpan span = lie_closure(logs, cfg.rank_tol);
    v.certificate.push_back(closure_step(logs, span, cfg.rank_tol,
                                         "all orbit logarithms lie in one 3-dimensional "
                                         "subalgebra"));
    auto triple = identify_so3_xyz(span);
    if (!triple) {
      v.kind = VerdictKind::Inconclusive;
      v.reason = "closure dimension 3 did not identify as a rotation block (numerical "
                 "degeneracy)";
      return v;
    }
    {
      CertStep s;
      s.name = "xyz-triple";
      s.scalars["bracket_residual"] = triple->bracket_residual;
      s.matrices = {triple->x, triple->y, triple->z};
      s.note = "orthonormal triple with rotation brackets: the subalgebra is a rotation "
               "block on a common 3-space";
      v.certificate.push_back(std::move(s));
    }

    // Where the four block directions point inside the identified block, and
    // whether their separations support any known relation family.
    std::vector<Eigen::VectorXd> axes;
    for (const auto& t : mode_subsets(4, 3)) {
      Eigen::MatrixXd d = embed(dir, 4, t, EmbedKind::Skew);
      Eigen::Vector3d u(skew_coordinates(d).dot(skew_coordinates(triple->x)),
                        skew_coordinates(d).dot(skew_coordinates(triple->y)),
                        skew_coordinates(d).dot(skew_coordinates(triple->z)));
      axes.push_back(u.normalized());
    }
    std::vector<Rational> seen;
    for (size_t i = 0; i < axes.size(); ++i)
      for (size_t j = i + 1; j < axes.size(); ++j) {
        double c = std::clamp(axes[i].dot(axes[j]), -1.0, 1.0);
        auto snapped = snap_rational(1.0 - c * c, 64, 1e-9);
        if (!snapped) continue;
        if (std::find(seen.begin(), seen.end(), *snapped) != seen.end()) continue;
        seen.push_back(*snapped);
        bool hit = geodetic_supports_relations(*snapped, GeodeticTable::resolve(cfg));
        CertStep s;
        s.name = "geodetic-lookup";
        s.scalars["num"] = snapped->get_num().get_d();
        s.scalars["den"] = snapped->get_den().get_d();
        s.scalars["supports"] = hit ? 1 : 0;
        s.note = hit ? "separation admits a known relation family"
                     : "no known relation family at this separation";
        v.certificate.push_back(std::move(s));
      }
    if (cls.kind == AngleKind::IrrationalPi)
      v.certificate.push_back(note_step(
          "subgroup-density-note",
          "irrational angle: each conjugate fills its one-parameter subgroup densely, "
          "so the group is dense in the rotation block but reaches nothing outside it"));
    else if (cls.kind == AngleKind::RationalPi)
      v.certificate.push_back(note_step(
          "subgroup-density-note",
          "finite-order conjugates about separated axes of the block; with no known "
          "relation family they explore the block freely yet never leave it"));
    else
      v.certificate.push_back(note_step(
          "subgroup-density-note",
          "the angle class is undetermined, but every word stays inside the rotation "
          "block either way"));
    v.certificate.push_back(toral_step(span.dim(), 4));
    v.kind = VerdictKind::NotUniversal;
    v.reason = "the orbit generates one rotation block on a common 3-space (closure "
               "dimension 3 of 6)";
    return v;
  }

  // n >= 5: the embedded directions close on a proper subalgebra.
  QuadMatrix pat(3, 3);
  pat.set(0, 1, QuadSurd(1));
  pat.set(1, 0, QuadSurd(-1));
  pat.set(0, 2, QuadSurd(-1));
  pat.set(2, 0, QuadSurd(1));
  pat.set(1, 2, QuadSurd(1));
  pat.set(2, 1, QuadSurd(-1));
  std::vector<Eigen::MatrixXd> gens;
  for (const auto& q : all_embeddings(pat, n, EmbedKind::Skew)) gens.push_back(q.to_double());
  LieSpan span = lie_closure(gens, cfg.rank_tol);
  std::string mode = "numeric";
  int exact_dim = -1;
  if (n <= 9) {
    ExactLieSpan es = lie_closure_exact(all_embeddings(pat, n, EmbedKind::Skew));
    exact_dim = es.dim();
    mode = "exact-cross-checked";
  }
  CertStep cs = closure_step(std::move(gens), span, cfg.rank_tol,
                             "closure of the permutation-invariant directions over all "
                             "mode triples",
                             mode);
  if (exact_dim >= 0) cs.scalars["exact_dim"] = exact_dim;
  v.certificate.push_back(std::move(cs));

  int dim = exact_dim >= 0 ? exact_dim : span.dim();
  if (n == 5) {
    v.certificate.push_back(toral_step(dim, 5));
    v.kind = VerdictKind::NotUniversal;
    v.reason = "proper invariant subalgebra of dimension 6 (of 10): the orbit never "
               "reaches the full algebra";
    return v;
  }
  std::ostringstream reason;
  reason << "conjecture: the orbit generates a rotation group on " << (n - 1)
         << " modes; closure dimension " << dim << " of " << n * (n - 1) / 2
         << " matches, but the identification is not asserted";
  v.kind = VerdictKind::Inconclusive;
  v.reason = reason.str();
  return v;
}

UniversalityVerdict general_direction_verdict(UniversalityVerdict v, const Mat3& dir,
                                              const AngleClass& cls, const AngleSpec& theta,
                                              int n, const EngineConfig& cfg) {
  auto conjs = conjugate_directions(dir, cfg.dedup_tol);

  // Independence witness: some permutation conjugate makes the pair span the
  // 3-mode algebra together with its bracket.
  int nonzero = 0;
  for (double c : {dir(0, 1), dir(0, 2), dir(1, 2)})
    if (std::abs(c) > 1e-9) ++nonzero;
  double best_det = 0;
  size_t best_idx = 0;
  for (size_t i = 1; i < conjs.size(); ++i) {
    double d = lemma_dependence_det(dir, conjs[i].second);
    if (std::abs(d) > std::abs(best_det)) {
      best_det = d;
      best_idx = i;
    }
  }
  {
    CertStep s;
    s.name = "case-analysis";
    s.labels["case"] = nonzero == 1   ? "single plane coefficient"
                       : nonzero == 2 ? "one vanishing coefficient"
                                      : "all coefficients nonzero";
    if (best_idx > 0) s.labels["permutation"] = conjs[best_idx].first;
    s.scalars["dependence_det"] = best_det;
    s.matrices.push_back(dir);
    if (best_idx > 0) s.matrices.push_back(conjs[best_idx].second);
    s.note = "a permutation conjugate independent of the generator, witnessed by a "
             "nonvanishing bracket determinant";
    v.certificate.push_back(std::move(s));
  }
  if (std::abs(best_det) <= 1e-9) {
    v.kind = VerdictKind::Inconclusive;
    v.reason = "no independent permutation conjugate found despite a non-invariant "
               "direction (numerical degeneracy)";
    return v;
  }

  if (cls.kind == AngleKind::IrrationalPi) {
    Mat3 r = exp_so3((theta.value() * dir).eval());
    DensityCheck dc = dense_in_one_param(r, {*theta.cosine()});
    v.certificate.push_back(density_step(r, dc, theta.cosine(),
                                         "one orbit representative; conjugates share the "
                                         "spectrum"));
    std::vector<Eigen::MatrixXd> gens;
    for (const auto& t : mode_subsets(n, 3))
      for (const auto& cpair : conjs) gens.push_back(embed(cpair.second, n, t, EmbedKind::Skew));
    LieSpan span = lie_closure(gens, cfg.rank_tol);
    v.certificate.push_back(closure_step(std::move(gens), span, cfg.rank_tol,
                                         "conjugate directions over all mode triples span "
                                         "the full algebra"));
    if (dc.kind == Density::Dense && span.is_full()) {
      v.kind = VerdictKind::Universal;
      v.reason =
          "every orbit element fills its one-parameter subgroup densely and the "
          "conjugate directions span the full algebra";
    } else {
      v.kind = VerdictKind::Inconclusive;
      v.reason = "direct route failed an internal check unexpectedly";
    }
    return v;
  }

  if (cls.kind == AngleKind::Unknown) {
    v.kind = VerdictKind::Inconclusive;
    v.reason = "rotation angle resists classification, so neither the irrational-angle "
               "route nor the finite-order route applies";
    return v;
  }

  // Finite order: search the orbit for a pair of rotations whose axis
  // separation classifies as a rational multiple of pi and avoids the
  // exceptional families.
  long order = rotation_order(cls);
  double th = cls.angle();
  std::vector<Vec3> axes;
  for (const auto& cpair : conjs) axes.push_back(axis_angle(exp_so3((th * cpair.second).eval())).axis);
  int unclassified = 0, exceptional = 0;
  for (size_t i = 0; i < axes.size(); ++i) {
    for (size_t j = i + 1; j < axes.size(); ++j) {
      double dot = std::clamp(axes[i].dot(axes[j]), -1.0, 1.0);
      if (1.0 - dot * dot < 1e-12) continue;  // same axis line: abelian pair
      double alpha = std::acos(dot);
      AngleClass sep = classify_numeric(alpha, cfg.q_max, cfg.angle_tol);
      if (sep.kind != AngleKind::RationalPi) {
        ++unclassified;
        continue;
      }
      {
        CertStep s;
        s.name = "axis-separation";
        s.scalars["cos_alpha"] = dot;
        s.matrices.push_back(axes[i]);
        s.matrices.push_back(axes[j]);
        s.note = "axes of two orbit rotations, separation " +
                 pi_fraction_str(sep.p, sep.q);
        v.certificate.push_back(std::move(s));
      }
      v.certificate.push_back(
          angle_step("axis separation", AngleSpec::radians(alpha), sep, cfg));
      CrsContext ctx;
      ctx.rot1 = {axes[i], th};
      ctx.rot2 = {axes[j], th};
      ctx.separation = sep;
      ctx.order1 = order;
      ctx.order2 = order;
      CrsResult cr = crs_dense(ctx);
      {
        CertStep s;
        s.name = "crs-density";
        s.scalars["order1"] = static_cast<double>(order);
        s.scalars["order2"] = static_cast<double>(order);
        s.scalars["p"] = static_cast<double>(sep.p);
        s.scalars["q"] = static_cast<double>(sep.q);
        s.scalars["dense"] = cr.dense ? 1 : 0;
        if (!cr.dense) s.labels["exception"] = cr.exception_tag;
        s.note = cr.note;
        v.certificate.push_back(std::move(s));
      }
      if (!cr.dense) {
        ++exceptional;
        continue;
      }
      append_triple_extension(v, n, cfg);
      v.kind = VerdictKind::Universal;
      v.reason = "two finite-order orbit rotations about separated axes generate a dense "
                 "rotation block, which extends through every mode subset";
      return v;
    }
  }
  v.kind = VerdictKind::Inconclusive;
  if (unclassified > 0)
    v.reason = "transcendence of e^{i2a} unverified for the computed axis separations";
  else if (exceptional > 0)
    v.reason = "every classified axis separation lands in an exceptional finite-order "
               "family";
  else
    v.reason = "no usable axis pair in the orbit";
  return v;
}

}  // namespace

UniversalityVerdict check_three_mode(const Mat3& A, int n_modes,
                                     const std::optional<AngleSpec>& theta,
                                     const EngineConfig& cfg) {
  if (n_modes < 3) throw DimensionError("universality needs at least 3 modes");
  if (!is_skew_symmetric(A, 1e-9)) throw NormalizationError("generator must be skew");
  double norm = skew_norm(A);
  if (norm < 1e-12) throw NormalizationError("the zero generator has no direction");
  if (theta && std::abs(theta->value() - norm) > 1e-6 * std::max(1.0, norm))
    throw DomainError("explicit angle disagrees with the generator norm");
  Mat3 dir = A / norm;
  AngleSpec spec = theta ? *theta : AngleSpec::radians(norm);

  UniversalityVerdict v;
  v.modes_available = n_modes;
  AngleClass cls = spec.classify(cfg);
  v.certificate.push_back(angle_step("rotation angle", spec, cls, cfg));

  double dist = 0;
  bool trivial = is_trivial_action(dir, &dist);
  {
    CertStep s;
    s.name = "trivial-action";
    s.scalars["trivial"] = trivial ? 1 : 0;
    s.scalars["distance"] = dist;
    s.matrices.push_back(dir);
    s.note = trivial ? "coefficient direction is permutation-invariant: all conjugates "
                       "act in one common rotation block"
                     : "coefficient direction is not permutation-invariant";
    v.certificate.push_back(std::move(s));
  }

  if (trivial)
    return trivial_direction_verdict(std::move(v), dir, cls, spec.value(), n_modes, cfg);
  return general_direction_verdict(std::move(v), dir, cls, spec, n_modes, cfg);
}

// ---------------------------------------------------------------------------
// General beamsplitters

UniversalityVerdict check_m_mode(const Eigen::MatrixXd& O, int n_modes,
                                 const std::vector<QuadSurd>& exact_cosines,
                                 const EngineConfig& cfg) {
  const int m = static_cast<int>(O.rows());
  if (O.cols() != m || m < 2)
    throw DimensionError("beamsplitter must be square, on at least two modes");
  if (n_modes < m) throw DimensionError("mode count below the beamsplitter size");
  if (!is_rotation_matrix(O, 1e-9))
    throw NormalizationError(
        "beamsplitter must be special orthogonal (orthogonal with determinant +1)");

  UniversalityVerdict v;
  v.modes_available = n_modes;

  if ((O - Eigen::MatrixXd::Identity(m, m)).cwiseAbs().maxCoeff() <= cfg.identity_tol) {
    CertStep s;
    s.name = "identity-orbit";
    s.scalars["tol"] = cfg.identity_tol;
    s.matrices.push_back(O);
    s.note = "the beamsplitter is the identity, so its orbit is the single element {I}";
    v.certificate.push_back(std::move(s));
    v.kind = VerdictKind::NotUniversal;
    v.reason = "identity beamsplitter: the orbit generates the trivial group";
    return v;
  }
  if (is_signed_permutation(O, cfg.identity_tol)) {
    CertStep s;
    s.name = "signed-permutation";
    s.scalars["flag"] = 1;
    s.scalars["tol"] = cfg.identity_tol;
    s.matrices.push_back(O);
    s.note = "signed permutation matrices form a finite group closed under conjugation "
             "by mode permutations";
    v.certificate.push_back(std::move(s));
    v.kind = VerdictKind::NotUniversal;
    v.reason = "signed mode permutation: the generated group is finite";
    return v;
  }
  if (auto pp = plane_pattern(O, cfg.identity_tol)) {
    CertStep s;
    s.name = "delegation";
    s.labels["to"] = "two-mode";
    s.scalars["k"] = pp->k;
    s.scalars["l"] = pp->l;
    s.scalars["theta"] = pp->theta;
    s.scalars["tol"] = cfg.identity_tol;
    s.matrices.push_back(O);
    s.note = "the beamsplitter rotates exactly one coordinate plane, so the two-mode "
             "procedure decides it";
    AngleSpec spec = exact_cosines.size() == 1 ? AngleSpec::exact_cosine(exact_cosines[0])
                                               : AngleSpec::radians(pp->theta);
    UniversalityVerdict inner = check_two_mode(spec, n_modes, cfg);
    inner.certificate.insert(inner.certificate.begin(), std::move(s));
    return inner;
  }
  if (m == 3) {
    CertStep s;
    s.name = "delegation";
    s.labels["to"] = "three-mode";
    s.matrices.push_back(O);
    s.note = "three-mode beamsplitter: the skew logarithm feeds the dedicated procedure";
    std::optional<AngleSpec> spec;
    if (exact_cosines.size() == 1) spec = AngleSpec::exact_cosine(exact_cosines[0]);
    Mat3 a = log_special_orthogonal(O);
    UniversalityVerdict inner = check_three_mode(a, n_modes, spec, cfg);
    inner.certificate.insert(inner.certificate.begin(), std::move(s));
    return inner;
  }

  // General pipeline: orbit, principal logarithms, bracket closure.
  std::vector<int> first_modes(m);
  std::iota(first_modes.begin(), first_modes.end(), 0);
  OrbitSet orb = orbit(embed(O, n_modes, first_modes, EmbedKind::Rotation), cfg.dedup_tol, 8);
  {
    CertStep s;
    s.name = "orbit";
    s.scalars["size"] = static_cast<double>(orb.elements.size());
    s.scalars["trivial"] = orb.trivial ? 1 : 0;
    s.scalars["dedup_tol"] = cfg.dedup_tol;
    s.matrices.push_back(orb.base);
    s.note = "permutation conjugates of the embedded beamsplitter";
    v.certificate.push_back(std::move(s));
  }
  std::vector<Eigen::MatrixXd> logs;
  logs.reserve(orb.elements.size());
  for (const auto& e : orb.elements) logs.push_back(log_special_orthogonal(e));
  {
    CertStep s;
    s.name = "principal-logs";
    s.note = "principal logarithms of the orbit (first elements recorded)";
    for (size_t i = 0; i < orb.elements.size() && i < 8; ++i) {
      s.matrices.push_back(orb.elements[i]);
      s.matrices.push_back(logs[i]);
    }
    v.certificate.push_back(std::move(s));
  }
  LieSpan span = lie_closure(logs, cfg.rank_tol);
  {
    CertStep s = closure_step(logs.size() <= 64 ? logs : std::vector<Eigen::MatrixXd>{},
                              span, cfg.rank_tol, "bracket closure of the orbit logarithms");
    if (logs.size() > 64) s.labels["replay"] = "omitted (generator set too large)";
    v.certificate.push_back(std::move(s));
  }

  const int ambient = n_modes * (n_modes - 1) / 2;
  if (!span.is_full()) {
    if (span.dim() + n_modes / 2 < ambient) {
      v.certificate.push_back(toral_step(span.dim(), n_modes));
      v.kind = VerdictKind::NotUniversal;
      std::ostringstream reason;
      reason << "proper invariant subalgebra of dimension " << span.dim() << " (of "
             << ambient << ")";
      v.reason = reason.str();
    } else {
      v.kind = VerdictKind::Inconclusive;
      v.reason = "the closure is proper but within the toral bound of the full dimension, "
                 "so properness of the group closure is not certified";
    }
    return v;
  }

  DensityCheck dc = dense_in_one_param(orb.base, exact_cosines);
  v.certificate.push_back(density_step(orb.base, dc,
                                       exact_cosines.size() == 1
                                           ? std::optional<QuadSurd>(exact_cosines[0])
                                           : std::nullopt,
                                       "spectral density of one orbit representative"));
  if (dc.kind == Density::Dense) {
    v.kind = VerdictKind::Universal;
    v.reason = "every orbit element fills its one-parameter subgroup densely and the "
               "logarithms span the full algebra";
    return v;
  }

  // The spectrum is not certified dense; try depth-2 products whose angle has
  // an exact cosine derived from the base angle.
  if (cfg.substitution_depth < 2) {
    v.kind = VerdictKind::Inconclusive;
    v.reason = "product substitution disabled by configuration";
    return v;
  }
  std::vector<QuadSurd> candidates;
  if (exact_cosines.size() == 1)
    candidates.push_back(product_angle_cos_exact(exact_cosines[0]));
  if (dc.classes.size() == 1 && dc.classes[0].kind == AngleKind::RationalPi) {
    if (auto c = exact_cos_pi_fraction(dc.classes[0].p, dc.classes[0].q)) {
      QuadSurd pc = product_angle_cos_exact(*c);
      bool dup = false;
      for (const auto& e : candidates) dup = dup || e == pc;
      if (!dup) candidates.push_back(pc);
    }
  }
  std::vector<Eigen::MatrixXd> certified;
  int cert_dim = 0;
  int density_steps = 0;
  long examined = 0;
  bool done = false;
  for (size_t i = 0; i < orb.elements.size() && !done; ++i) {
    for (size_t j = 0; j < orb.elements.size() && !done; ++j) {
      if (i == j) continue;
      if (++examined > 20000) {
        done = true;
        break;
      }
      Eigen::MatrixXd p = orb.elements[i] * orb.elements[j];
      if ((p - Eigen::MatrixXd::Identity(n_modes, n_modes)).cwiseAbs().maxCoeff() <=
          cfg.identity_tol)
        continue;
      SpectrumAngles sa = spectrum_angles(p);
      int distinct = 0;
      double nonzero_angle = 0;
      for (double ang : sa.angles)
        if (ang > cfg.angle_tol && std::abs(ang - nonzero_angle) > cfg.angle_tol) {
          ++distinct;
          nonzero_angle = ang;
        }
      if (distinct != 1) continue;
      for (const auto& cand : candidates) {
        if (std::abs(std::cos(nonzero_angle) - cand.to_double()) > 1e-9) continue;
        DensityCheck pd = dense_in_one_param(p, {cand});
        if (pd.kind != Density::Dense) continue;
        if (density_steps < 12) {
          v.certificate.push_back(density_step(p, pd, cand,
                                               "depth-2 product with certified dense "
                                               "one-parameter subgroup"));
          ++density_steps;
        }
        certified.push_back(log_special_orthogonal(p));
        cert_dim = lie_closure(certified, cfg.rank_tol).dim();
        done = cert_dim == ambient;
        break;
      }
    }
  }
  if (!certified.empty()) {
    LieSpan final_span = lie_closure(certified, cfg.rank_tol);
    CertStep s = closure_step(certified.size() <= 64 ? certified
                                                     : std::vector<Eigen::MatrixXd>{},
                              final_span, cfg.rank_tol,
                              "bracket closure of the certified product logarithms");
    if (certified.size() > 64) s.labels["replay"] = "omitted (generator set too large)";
    v.certificate.push_back(std::move(s));
    if (final_span.is_full()) {
      v.kind = VerdictKind::Universal;
      v.reason = "product substitution yields dense one-parameter subgroups whose "
                 "logarithms span the full algebra";
      return v;
    }
  }
  v.kind = VerdictKind::Inconclusive;
  v.reason = "product substitution could not certify a spanning set of dense "
             "one-parameter subgroups";
  return v;
}

// ---------------------------------------------------------------------------
// Conjecture experiment

ConjectureReport conjecture_experiment(int k) {
  if (k < 4 || k > 9) throw DomainError("conjecture experiment supports 4 <= k <= 9");
  QuadMatrix pat(3, 3);
  pat.set(0, 1, QuadSurd(1));
  pat.set(1, 0, QuadSurd(-1));
  pat.set(0, 2, QuadSurd(-1));
  pat.set(2, 0, QuadSurd(1));
  pat.set(1, 2, QuadSurd(1));
  pat.set(2, 1, QuadSurd(-1));
  auto embeds = all_embeddings(pat, k, EmbedKind::Skew);
  ExactLieSpan span = lie_closure_exact(embeds);
  ConjectureReport r;
  r.k = k;
  r.triples = static_cast<long>(embeds.size());
  r.closure_dim = span.dim();
  r.conjectured_dim = (k - 1) * (k - 2) / 2;
  r.matches = r.closure_dim == r.conjectured_dim;
  return r;
}

// ---------------------------------------------------------------------------
// Certificate replay

namespace {

bool replay_step(const CertStep& s, const EngineConfig& cfg, std::string* why) {
  auto fail = [&](const std::string& m) {
    if (why) *why = m;
    return false;
  };

  if (s.name == "angle-class") {
    std::string source = step_label(s, "source");
    AngleClass r;
    if (source == "exact-cosine")
      r = classify_exact(QuadSurd::parse(step_label(s, "cos")));
    else if (source == "numeric")
      r = classify_numeric(step_scalar(s, "theta"), std::lround(step_scalar(s, "q_max")),
                           step_scalar(s, "tol"));
    else if (source == "pi-fraction") {
      long p = std::lround(step_scalar(s, "p")), q = std::lround(step_scalar(s, "q"));
      if (step_label(s, "kind") != "rational-pi" || std::gcd(p, q) != 1 || p < 0 || p >= 2 * q)
        return fail("pi-fraction step is not in canonical form");
      return true;
    } else {
      return fail("unknown angle source '" + source + "'");
    }
    if (angle_kind_name(r.kind) != step_label(s, "kind"))
      return fail("angle class changed on replay");
    if (r.kind == AngleKind::RationalPi &&
        (r.p != std::lround(step_scalar(s, "p")) || r.q != std::lround(step_scalar(s, "q"))))
      return fail("rational angle fraction changed on replay");
    return true;
  }
  if (s.name == "lie-closure") {
    auto omitted = s.labels.find("replay");
    if (omitted != s.labels.end()) return true;
    if (s.matrices.empty()) return fail("closure step without generators");
    LieSpan span = lie_closure(s.matrices, step_scalar(s, "rank_tol"));
    if (span.dim() != std::lround(step_scalar(s, "dim")))
      return fail("closure dimension changed on replay");
    return true;
  }
  if (s.name == "basis-determinant") {
    int n = static_cast<int>(std::lround(step_scalar(s, "n")));
    double th = step_scalar(s, "theta");
    double detv, closed;
    if (n == 3) {
      BchBasisReport rep = bch_basis_matrix_so3(th);
      detv = rep.determinant;
      closed = rep.closed_form_det;
    } else {
      detv = assemble_p_block(n, th).determinant();
      closed = p_block_determinant(n, th);
    }
    if (std::abs(detv - step_scalar(s, "value")) > 1e-9 ||
        std::abs(closed - step_scalar(s, "closed_form")) > 1e-9)
      return fail("coupling determinant changed on replay");
    return true;
  }
  if (s.name == "generating-set") {
    GeneratingSet gs = build_generating_set(static_cast<int>(std::lround(step_scalar(s, "n"))),
                                            step_scalar(s, "theta"));
    if (static_cast<double>(gs.products.size()) != step_scalar(s, "size"))
      return fail("generating set size changed on replay");
    return true;
  }
  if (s.name == "product-angle") {
    QuadSurd ct = QuadSurd::parse(step_label(s, "cos_theta"));
    QuadSurd ca = QuadSurd::parse(step_label(s, "cos_alpha"));
    if (!(product_angle_cos_exact(ct) == ca))
      return fail("product angle cosine changed on replay");
    return true;
  }
  if (s.name == "spectrum-density") {
    if (s.matrices.empty()) return fail("density step without a matrix");
    std::vector<QuadSurd> cs;
    auto it = s.labels.find("cos");
    if (it != s.labels.end()) cs.push_back(QuadSurd::parse(it->second));
    DensityCheck dc = dense_in_one_param(s.matrices[0], cs);
    if (density_name(dc.kind) != step_label(s, "density"))
      return fail("density verdict changed on replay");
    return true;
  }
  if (s.name == "orbit") {
    if (s.matrices.empty()) return fail("orbit step without a base");
    OrbitSet orb = orbit(s.matrices[0], step_scalar(s, "dedup_tol"));
    if (static_cast<double>(orb.elements.size()) != step_scalar(s, "size") ||
        (orb.trivial ? 1.0 : 0.0) != step_scalar(s, "trivial"))
      return fail("orbit shape changed on replay");
    return true;
  }
  if (s.name == "principal-logs") {
    if (s.matrices.size() % 2 != 0) return fail("log step needs (rotation, log) pairs");
    for (size_t i = 0; i < s.matrices.size(); i += 2) {
      Eigen::MatrixXd a = log_special_orthogonal(s.matrices[i]);
      if ((a - s.matrices[i + 1]).cwiseAbs().maxCoeff() > 1e-8)
        return fail("principal logarithm changed on replay");
    }
    return true;
  }
  if (s.name == "axis-separation") {
    if (s.matrices.size() < 2) return fail("separation step needs two axes");
    double dot = s.matrices[0].col(0).dot(s.matrices[1].col(0));
    if (std::abs(dot - step_scalar(s, "cos_alpha")) > 1e-9)
      return fail("axis separation changed on replay");
    return true;
  }
  if (s.name == "crs-density") {
    CrsContext ctx;
    ctx.separation.kind = AngleKind::RationalPi;
    ctx.separation.p = std::lround(step_scalar(s, "p"));
    ctx.separation.q = std::lround(step_scalar(s, "q"));
    ctx.order1 = std::lround(step_scalar(s, "order1"));
    ctx.order2 = std::lround(step_scalar(s, "order2"));
    CrsResult cr = crs_dense(ctx);
    if ((cr.dense ? 1.0 : 0.0) != step_scalar(s, "dense"))
      return fail("density criterion changed on replay");
    auto it = s.labels.find("exception");
    if (it != s.labels.end() && cr.exception_tag != it->second)
      return fail("exception family changed on replay");
    return true;
  }
  if (s.name == "geodetic-lookup") {
    Rational r(std::lround(step_scalar(s, "num")), std::lround(step_scalar(s, "den")));
    r.canonicalize();
    bool hit = geodetic_supports_relations(r, GeodeticTable::resolve(cfg));
    if ((hit ? 1.0 : 0.0) != step_scalar(s, "supports"))
      return fail("geodetic lookup changed on replay");
    return true;
  }
  if (s.name == "trivial-action") {
    if (s.matrices.empty()) return fail("trivial-action step without a direction");
    Mat3 d = s.matrices[0];
    bool t = is_trivial_action(d);
    if ((t ? 1.0 : 0.0) != step_scalar(s, "trivial"))
      return fail("trivial-action flag changed on replay");
    return true;
  }
  if (s.name == "xyz-triple") {
    if (s.matrices.size() != 3) return fail("triple step needs three matrices");
    const auto& x = s.matrices[0];
    const auto& y = s.matrices[1];
    const auto& z = s.matrices[2];
    double res = std::max({skew_norm((commutator(x, y) - z).eval()),
                           skew_norm((commutator(y, z) - x).eval()),
                           skew_norm((commutator(z, x) - y).eval())});
    if (res > 1e-7) return fail("rotation-block brackets fail on replay");
    return true;
  }
  if (s.name == "toral-bound") {
    if (step_scalar(s, "closure_dim") + step_scalar(s, "max_torus") >=
        step_scalar(s, "ambient"))
      return fail("toral bound does not separate the closure from the full algebra");
    return true;
  }
  if (s.name == "case-analysis") {
    if (s.matrices.size() < 2) return true;  // single-matrix narrative form
    Mat3 a = s.matrices[0], b = s.matrices[1];
    if (std::abs(lemma_dependence_det(a, b) - step_scalar(s, "dependence_det")) > 1e-9)
      return fail("dependence determinant changed on replay");
    return true;
  }
  if (s.name == "identity-orbit") {
    if (s.matrices.empty()) return fail("identity step without a matrix");
    long n = s.matrices[0].rows();
    if ((s.matrices[0] - Eigen::MatrixXd::Identity(n, n)).cwiseAbs().maxCoeff() >
        step_scalar(s, "tol"))
      return fail("matrix is not the identity on replay");
    return true;
  }
  if (s.name == "signed-permutation") {
    if (s.matrices.empty()) return fail("signed-permutation step without a matrix");
    if (!is_signed_permutation(s.matrices[0], step_scalar(s, "tol")))
      return fail("matrix is not a signed permutation on replay");
    return true;
  }
  if (s.name == "delegation" && s.labels.count("to") && step_label(s, "to") == "two-mode" &&
      !s.matrices.empty()) {
    auto pp = plane_pattern(s.matrices[0], step_scalar(s, "tol"));
    if (!pp) return fail("plane pattern vanished on replay");
    if (pp->k != std::lround(step_scalar(s, "k")) || pp->l != std::lround(step_scalar(s, "l")) ||
        std::abs(pp->theta - step_scalar(s, "theta")) > 1e-9)
      return fail("plane pattern changed on replay");
    return true;
  }
  // Narrative steps carry no recomputable content.
  return true;
}

}  // namespace

bool replay_certificate(const UniversalityVerdict& verdict, const EngineConfig& cfg,
                        std::string* why) {
  for (size_t i = 0; i < verdict.certificate.size(); ++i) {
    const CertStep& s = verdict.certificate[i];
    std::string inner;
    bool ok = false;
    try {
      ok = replay_step(s, cfg, &inner);
    } catch (const std::exception& e) {
      inner = std::string("threw: ") + e.what();
    }
    if (!ok) {
      if (why)
        *why = "step " + std::to_string(i) + " (" + s.name + "): " +
               (inner.empty() ? "failed" : inner);
      return false;
    }
  }
  return true;
}

}  // namespace sogen
