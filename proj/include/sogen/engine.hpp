// Copyright (c) 2026 The sogen authors
// SPDX-License-Identifier: MIT

#pragma once

#include <Eigen/Dense>

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "sogen/angle_class.hpp"
#include "sogen/errors.hpp"
#include "sogen/exact.hpp"
#include "sogen/so3.hpp"

namespace sogen {

/// Tolerances and caps shared by the decision procedures. Defaults suit
/// double precision; the geodetic table path is resolved relative to the
/// working directory, and an empty path falls back to the built-in table.
struct EngineConfig {
  double rank_tol = 1e-8;        // numeric Lie-closure rank threshold
  double dedup_tol = 1e-9;       // orbit deduplication distance
  double angle_tol = 1e-9;       // numeric angle identification tolerance
  double identity_tol = 1e-9;    // matrix-is-identity threshold
  long q_max = 10000;            // largest denominator for numeric angles
  int substitution_depth = 2;    // product substitution word length cap
  long long word_budget = 10000000;  // identity-search enumeration ceiling
  std::string geodetic_table_path;  // empty: built-in table (data/geodetic_exceptions.txt ships the same entries)
};

/// An angle given as an exact fraction of pi, as an exact cosine, or as a
/// bare floating value. The first two classify exactly; a floating angle can
/// only ever be identified as rational-pi within tolerance, never certified
/// irrational.
class AngleSpec {
 public:
  static AngleSpec radians(double theta);
  /// theta = p*pi/q (q >= 1, any integer p; normalized mod 2*pi).
  static AngleSpec pi_fraction(long p, long q);
  /// Principal angle in [0, pi] with the given exact cosine.
  static AngleSpec exact_cosine(const QuadSurd& cos_theta);

  double value() const;  // radians
  /// Exact cosine when one is derivable (given directly, or reconstructed
  /// from a pi fraction with a quadratic cosine).
  std::optional<QuadSurd> cosine() const;
  AngleClass classify(const EngineConfig& cfg = {}) const;
  /// "pi-fraction", "exact-cosine" or "numeric": how the angle was given,
  /// which decides how its classification replays.
  std::string form_name() const;

 private:
  AngleSpec() = default;

  enum class Form { Radians, PiFraction, ExactCos } form_ = Form::Radians;
  double theta_ = 0;
  long p_ = 0, q_ = 1;
  std::optional<QuadSurd> cos_;
};

/// One replayable step of a certificate: a tag naming the procedure, the
/// human-readable note, and the named inputs/outputs needed to recompute it.
/// Matrix inputs ride along in `matrices` (meaning depends on the tag).
struct CertStep {
  std::string name;
  std::string note;
  std::map<std::string, double> scalars;
  std::map<std::string, std::string> labels;
  std::vector<Eigen::MatrixXd> matrices;
};

enum class VerdictKind { Universal, NotUniversal, Inconclusive };

std::string verdict_kind_name(VerdictKind k);

/// Decision together with the ordered trail of facts that produced it.
/// Universal and NotUniversal are proven claims about density in SO(N);
/// Inconclusive carries the blocking hypothesis in `reason`.
struct UniversalityVerdict {
  VerdictKind kind = VerdictKind::Inconclusive;
  std::string reason;
  int modes_available = 0;
  std::vector<CertStep> certificate;
};

/// Re-runs every recomputable certificate step and compares against the
/// recorded values. Returns false and fills `why` on the first mismatch.
bool replay_certificate(const UniversalityVerdict& verdict, const EngineConfig& cfg = {},
                        std::string* why = nullptr);

/// Table of axis separations (as exact squared sines) that are known to
/// admit relations between finite-order rotations. Lines hold one reduced
/// fraction each; '#' comments.
struct GeodeticTable {
  std::vector<Rational> entries;

  static GeodeticTable builtin();
  /// ConfigError when the file is missing or malformed.
  static GeodeticTable load(const std::string& path);
  /// Resolves cfg.geodetic_table_path, or the built-in table when empty.
  static GeodeticTable resolve(const EngineConfig& cfg);
};

/// Whether the separation angle alpha with the given exact sin^2 supports
/// any known relation family. DomainError outside [0, 1].
bool geodetic_supports_relations(const Rational& sin_sq_alpha, const GeodeticTable& table);

/// Inputs of the two-rotation density criterion: two finite-order rotations
/// of a shared 3-space and the exact classification of the angle between
/// their axes.
struct CrsContext {
  AxisAngle rot1, rot2;
  AngleClass separation;                // must classify as rational-pi
  std::optional<QuadSurd> separation_cos;  // exact cosine when available
  long order1 = 0, order2 = 0;          // rotation orders; 0 means infinite
};

struct CrsResult {
  bool dense = false;
  /// Which exceptional family matched, empty when dense.
  std::string exception_tag;
  std::string note;
};

/// Density criterion for the group generated by two finite-order rotations
/// about axes separated by a rational multiple of pi, strictly between 0 and
/// pi: dense in the rotation group of the shared 3-space unless one rotation
/// is the identity, one is a half turn with orthogonal axes, or both orders
/// divide 4. PreconditionError when an order is not finite, the separation
/// did not classify rational, or the axes are parallel.
CrsResult crs_dense(const CrsContext& ctx);

/// Decides density in SO(n_modes) for the group generated by the mode
/// permutation orbit of a two-mode beamsplitter with mixing angle theta.
/// Angles {0, pi/2, pi, 3pi/2} generate signed permutations (NotUniversal);
/// certified irrational angles pass directly; rational angles go through the
/// crossing-plane product substitution. DimensionError for n_modes < 3.
UniversalityVerdict check_two_mode(const AngleSpec& theta, int n_modes,
                                   const EngineConfig& cfg = {});

/// Decides density in SO(n_modes) for the orbit of exp(A) with A a 3x3 skew
/// generator; the coefficient direction of A fixes the case analysis and
/// |A| is the rotation angle. An exact angle specification may replace the
/// floating norm when available (the direction still comes from A).
/// NormalizationError when A vanishes; DimensionError for n_modes < 3.
UniversalityVerdict check_three_mode(const Mat3& A, int n_modes,
                                     const std::optional<AngleSpec>& theta = std::nullopt,
                                     const EngineConfig& cfg = {});

/// General entry point: decides density in SO(n_modes) for the permutation
/// orbit of an m x m special orthogonal beamsplitter, 2 <= m <= n_modes.
/// Exact cosines of the nonzero spectral angles may be supplied to allow
/// exact classification. Two-mode patterns delegate to check_two_mode.
/// NormalizationError when O is not special orthogonal; SizeError when the
/// orbit enumeration exceeds its cap (n_modes > 8).
UniversalityVerdict check_m_mode(const Eigen::MatrixXd& O, int n_modes,
                                 const std::vector<QuadSurd>& exact_cosines = {},
                                 const EngineConfig& cfg = {});

/// Closure dimension of all triple embeddings of the permutation-invariant
/// skew pattern on k modes, against the conjectured value (k-1)(k-2)/2.
/// The dimension is computed exactly (integer patterns).
struct ConjectureReport {
  int k = 0;
  long triples = 0;
  int closure_dim = 0;
  int conjectured_dim = 0;
  bool matches = false;
};

/// DomainError outside 4 <= k <= 9.
ConjectureReport conjecture_experiment(int k);

}  // namespace sogen
