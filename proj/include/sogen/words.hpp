// Copyright (c) 2026 The sogen authors
// SPDX-License-Identifier: MIT

#pragma once

#include <Eigen/Dense>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "sogen/errors.hpp"
#include "sogen/exact_matrix.hpp"

namespace sogen {

/// How words over the generators are spelled and measured.
///
/// FromOrders: a word is a sequence of syllables g^e with e in 1..order-1
/// for finite-order generators (so no syllable is trivially the identity)
/// and e in {-1, +1} for infinite-order ones; adjacent syllables use
/// distinct generators; length counts syllables.
///
/// LettersOnly: exponents grow one letter at a time, every generator
/// contributes letters g and g^-1, and length counts letters (the sum of
/// absolute exponents). This convention reaches g^order and reports the
/// letter cost of powers.
enum class ExponentPolicy { FromOrders, LettersOnly };

struct Syllable {
  int generator = 0;
  int exponent = 0;

  bool operator==(const Syllable&) const = default;
};

/// Freely reduced word: no zero exponents, adjacent syllables use distinct
/// generators.
struct Word {
  std::vector<Syllable> letters;

  bool empty() const { return letters.empty(); }
  int syllable_count() const { return static_cast<int>(letters.size()); }
  /// Sum of absolute exponents.
  int letter_count() const;
  /// Rendering like "g0^2 g1^-1"; "e" for the empty word.
  std::string to_string() const;

  bool operator==(const Word&) const = default;
};

/// Merges adjacent syllables of one generator and drops zero exponents
/// until the word is freely reduced.
Word reduce_word(const Word& w);

/// Concatenation followed by free reduction.
Word concat_words(const Word& a, const Word& b);

/// Evaluates a word over the given generators; negative exponents use the
/// transpose (generators must be orthogonal).
Eigen::MatrixXd evaluate_word(const Word& w, const std::vector<Eigen::MatrixXd>& generators);
QuadMatrix evaluate_word(const Word& w, const std::vector<QuadMatrix>& generators);

struct WordStreamConfig {
  ExponentPolicy policy = ExponentPolicy::FromOrders;
  /// BudgetError when the projected number of words exceeds this.
  long long budget = 10'000'000;
};

/// Number of words of length <= max_len under the policy, including the
/// empty word, computed without enumerating. Saturates at a large value
/// once the count is certainly beyond any budget in use.
double projected_word_count(const std::vector<int>& orders, ExponentPolicy policy, int max_len);

/// Streams every freely reduced word of length <= max_len exactly once in
/// breadth-first order (empty word first, then complete length shells),
/// together with its evaluated matrix. The visitor returns false to stop.
/// orders[i] is generator i's rotation order, 0 for infinite order; the
/// LettersOnly policy ignores orders. BudgetError before any work when the
/// projected count exceeds config.budget.
void enumerate_words(const std::vector<Eigen::MatrixXd>& generators,
                     const std::vector<int>& orders, int max_len, const WordStreamConfig& config,
                     const std::function<bool(const Word&, const Eigen::MatrixXd&)>& visit);
void enumerate_words(const std::vector<QuadMatrix>& generators, const std::vector<int>& orders,
                     int max_len, const WordStreamConfig& config,
                     const std::function<bool(const Word&, const QuadMatrix&)>& visit);

/// First nonempty word (breadth-first order) whose matrix is within tol of
/// the identity in the max-abs entry metric, or nullopt.
std::optional<Word> identity_word_search(const std::vector<Eigen::MatrixXd>& generators,
                                         const std::vector<int>& orders, int max_len,
                                         double tol = 1e-9, const WordStreamConfig& config = {});

/// Exact-arithmetic variant: the word matrix must equal the identity.
std::optional<Word> identity_word_search(const std::vector<QuadMatrix>& generators,
                                         const std::vector<int>& orders, int max_len,
                                         const WordStreamConfig& config = {});

/// Bi-invariant rotation-angle distance: the largest principal rotation
/// angle of a*b^T. Supports 3x3 and 4x4 special orthogonal matrices.
double rotation_distance(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b);

/// Haar-distributed rotations from a seeded generator, via uniformly random
/// unit quaternions (one for SO(3), an isoclinic pair for SO(4)).
/// Deterministic given the seed. DomainError unless n is 3 or 4.
std::vector<Eigen::MatrixXd> haar_rotations(int n, long long count, unsigned long long seed);

/// Any rotation R is at least arccos(v^T R v / v^T v) away from every
/// rotation fixing v, in the rotation-angle metric: a floor on nearest-word
/// distances when all words stabilize a common vector.
double stabilizer_angle_floor(const Eigen::MatrixXd& r, const Eigen::VectorXd& fixed);

inline constexpr int kCoverageHistogramBins = 32;

struct CoverageReport {
  int max_len = 0;
  long long sample_count = 0;
  /// Maximum over samples of the distance to the nearest word, radians.
  double covering_radius = 0.0;
  /// Nearest-word distances binned uniformly over [0, pi].
  std::vector<long long> histogram;
};

/// Covering reports for several word-length cutoffs over one shared sample
/// set: words are enumerated once up to max_lens.back() and each report
/// uses the words within its cutoff, so radii are non-increasing along
/// max_lens by construction. max_lens must be strictly increasing.
/// threads = 0 picks a machine-dependent count; results do not depend on it.
std::vector<CoverageReport> covering_profile(const std::vector<Eigen::MatrixXd>& generators,
                                             const std::vector<int>& orders,
                                             const std::vector<int>& max_lens, long long samples,
                                             unsigned long long seed,
                                             const WordStreamConfig& config = {}, int threads = 0);

/// Single-cutoff convenience wrapper around covering_profile.
CoverageReport covering_estimate(const std::vector<Eigen::MatrixXd>& generators,
                                 const std::vector<int>& orders, int max_len, long long samples,
                                 unsigned long long seed, const WordStreamConfig& config = {},
                                 int threads = 0);

}  // namespace sogen
