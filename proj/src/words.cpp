// Copyright (c) 2026 The sogen authors
// SPDX-License-Identifier: MIT

#include "sogen/words.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>
#include <thread>

namespace sogen {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kCountCap = 1e15;

int sign_of(int e) { return e > 0 ? 1 : -1; }

}  // namespace

int Word::letter_count() const {
  int total = 0;
  for (const Syllable& s : letters) total += std::abs(s.exponent);
  return total;
}

std::string Word::to_string() const {
  if (letters.empty()) return "e";
  std::ostringstream out;
  for (size_t i = 0; i < letters.size(); ++i) {
    if (i > 0) out << ' ';
    out << 'g' << letters[i].generator;
    if (letters[i].exponent != 1) out << '^' << letters[i].exponent;
  }
  return out.str();
}

Word reduce_word(const Word& w) {
  Word out;
  for (const Syllable& s : w.letters) {
    if (s.exponent == 0) continue;
    if (!out.letters.empty() && out.letters.back().generator == s.generator) {
      out.letters.back().exponent += s.exponent;
      if (out.letters.back().exponent == 0) out.letters.pop_back();
    } else {
      out.letters.push_back(s);
    }
  }
  return out;
}

Word concat_words(const Word& a, const Word& b) {
  Word joined = a;
  joined.letters.insert(joined.letters.end(), b.letters.begin(), b.letters.end());
  return reduce_word(joined);
}

namespace {

template <class M>
M word_value(const Word& w, const std::vector<M>& generators, M acc) {
  for (const Syllable& s : w.letters) {
    if (s.generator < 0 || s.generator >= static_cast<int>(generators.size())) {
      throw IndexError("word references a generator outside the list");
    }
    const M step = s.exponent > 0 ? generators[s.generator]
                                  : M(generators[s.generator].transpose());
    for (int k = 0; k < std::abs(s.exponent); ++k) acc = acc * step;
  }
  return acc;
}

}  // namespace

Eigen::MatrixXd evaluate_word(const Word& w, const std::vector<Eigen::MatrixXd>& generators) {
  if (generators.empty()) throw DomainError("evaluate_word: empty generator list");
  const long n = generators[0].rows();
  return word_value(w, generators, Eigen::MatrixXd(Eigen::MatrixXd::Identity(n, n)));
}

QuadMatrix evaluate_word(const Word& w, const std::vector<QuadMatrix>& generators) {
  if (generators.empty()) throw DomainError("evaluate_word: empty generator list");
  return word_value(w, generators, QuadMatrix::identity(generators[0].rows()));
}

double projected_word_count(const std::vector<int>& orders, ExponentPolicy policy, int max_len) {
  for (int o : orders) {
    if (o < 0) throw DomainError("projected_word_count: negative generator order");
  }
  double total = 1.0;  // the empty word
  if (max_len < 1 || orders.empty()) return total;

  if (policy == ExponentPolicy::LettersOnly) {
    const double k = static_cast<double>(orders.size());
    double shell = 2.0 * k;
    for (int len = 1; len <= max_len; ++len) {
      total += shell;
      if (total > kCountCap) return kCountCap;
      shell *= 2.0 * k - 1.0;
    }
    return total;
  }

  // FromOrders: per-generator syllable alphabet sizes, then a shell
  // recurrence over which generator ends the word.
  std::vector<double> alphabet(orders.size());
  for (size_t i = 0; i < orders.size(); ++i) {
    alphabet[i] = orders[i] == 0 ? 2.0 : static_cast<double>(orders[i] - 1);
  }
  std::vector<double> ending(alphabet);
  for (int len = 1; len <= max_len; ++len) {
    double shell = 0.0;
    for (double e : ending) shell += e;
    total += shell;
    if (total > kCountCap) return kCountCap;
    if (len == max_len) break;
    std::vector<double> next(ending.size());
    for (size_t g = 0; g < ending.size(); ++g) next[g] = alphabet[g] * (shell - ending[g]);
    ending = std::move(next);
  }
  return total;
}

namespace {

template <class M>
struct WordNode {
  Word word;
  M mat;
};

/// Shared breadth-first engine over both matrix kinds. `is_orthonormal`
/// validates a generator, `id` supplies the identity of the right size.
template <class M>
void enumerate_impl(const std::vector<M>& generators, const std::vector<int>& orders, int max_len,
                    const WordStreamConfig& config,
                    const std::function<bool(const Word&, const M&)>& visit, const M& id,
                    const std::function<bool(const M&)>& is_orthonormal) {
  if (generators.empty()) throw DomainError("enumerate_words: need at least one generator");
  if (orders.size() != generators.size()) {
    throw DomainError("enumerate_words: orders must align with generators");
  }
  for (const M& g : generators) {
    if (!is_orthonormal(g)) {
      throw NormalizationError("enumerate_words: generators must be orthogonal");
    }
  }
  const double projected = projected_word_count(orders, config.policy, max_len);
  if (projected > static_cast<double>(config.budget)) {
    std::ostringstream msg;
    msg << "enumerate_words: projected " << projected << " words exceed the budget of "
        << config.budget;
    throw BudgetError(msg.str());
  }

  // Per-generator extension alphabet: the syllables a word may be extended
  // by, as (exponent, matrix) pairs. LettersOnly uses bare letters.
  const int k = static_cast<int>(generators.size());
  std::vector<std::vector<std::pair<int, M>>> alphabet(static_cast<size_t>(k));
  for (int g = 0; g < k; ++g) {
    if (config.policy == ExponentPolicy::LettersOnly || orders[static_cast<size_t>(g)] == 0) {
      alphabet[g].emplace_back(1, generators[g]);
      alphabet[g].emplace_back(-1, M(generators[g].transpose()));
    } else {
      M power = generators[g];
      for (int e = 1; e < orders[static_cast<size_t>(g)]; ++e) {
        alphabet[g].emplace_back(e, power);
        power = power * generators[g];
      }
    }
  }

  std::vector<WordNode<M>> frontier;
  frontier.push_back({Word{}, id});
  if (!visit(frontier.front().word, frontier.front().mat)) return;

  for (int len = 1; len <= max_len; ++len) {
    std::vector<WordNode<M>> next;
    for (const WordNode<M>& node : frontier) {
      const bool has_last = !node.word.letters.empty();
      const Syllable last = has_last ? node.word.letters.back() : Syllable{};
      for (int g = 0; g < k; ++g) {
        if (config.policy == ExponentPolicy::FromOrders) {
          if (has_last && last.generator == g) continue;
          for (const auto& [e, m] : alphabet[g]) {
            WordNode<M> child{node.word, node.mat * m};
            child.word.letters.push_back({g, e});
            if (!visit(child.word, child.mat)) return;
            next.push_back(std::move(child));
          }
        } else {
          for (const auto& [e, m] : alphabet[g]) {
            // Appending the cancelling letter would shorten the word; that
            // word was already seen, so each reduced word appears once.
            if (has_last && last.generator == g && sign_of(last.exponent) != e) continue;
            WordNode<M> child{node.word, node.mat * m};
            if (has_last && last.generator == g) {
              child.word.letters.back().exponent += e;
            } else {
              child.word.letters.push_back({g, e});
            }
            if (!visit(child.word, child.mat)) return;
            next.push_back(std::move(child));
          }
        }
      }
    }
    frontier = std::move(next);
  }
}

}  // namespace

void enumerate_words(const std::vector<Eigen::MatrixXd>& generators,
                     const std::vector<int>& orders, int max_len, const WordStreamConfig& config,
                     const std::function<bool(const Word&, const Eigen::MatrixXd&)>& visit) {
  const long n = generators.empty() ? 0 : generators[0].rows();
  enumerate_impl<Eigen::MatrixXd>(
      generators, orders, max_len, config, visit,
      Eigen::MatrixXd(Eigen::MatrixXd::Identity(n, n)), [n](const Eigen::MatrixXd& g) {
        if (g.rows() != n || g.cols() != n) return false;
        return (g * g.transpose() - Eigen::MatrixXd::Identity(n, n)).cwiseAbs().maxCoeff() <= 1e-9;
      });
}

void enumerate_words(const std::vector<QuadMatrix>& generators, const std::vector<int>& orders,
                     int max_len, const WordStreamConfig& config,
                     const std::function<bool(const Word&, const QuadMatrix&)>& visit) {
  const int n = generators.empty() ? 0 : generators[0].rows();
  enumerate_impl<QuadMatrix>(generators, orders, max_len, config, visit, QuadMatrix::identity(n),
                             [n](const QuadMatrix& g) {
                               return g.rows() == n && g.cols() == n && g.is_orthogonal();
                             });
}

std::optional<Word> identity_word_search(const std::vector<Eigen::MatrixXd>& generators,
                                         const std::vector<int>& orders, int max_len, double tol,
                                         const WordStreamConfig& config) {
  std::optional<Word> hit;
  enumerate_words(generators, orders, max_len, config,
                  [&](const Word& w, const Eigen::MatrixXd& m) {
                    if (w.empty()) return true;
                    const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(m.rows(), m.cols());
                    if ((m - id).cwiseAbs().maxCoeff() <= tol) {
                      hit = w;
                      return false;
                    }
                    return true;
                  });
  return hit;
}

std::optional<Word> identity_word_search(const std::vector<QuadMatrix>& generators,
                                         const std::vector<int>& orders, int max_len,
                                         const WordStreamConfig& config) {
  std::optional<Word> hit;
  enumerate_words(generators, orders, max_len, config, [&](const Word& w, const QuadMatrix& m) {
    if (w.empty()) return true;
    if (m.is_identity()) {
      hit = w;
      return false;
    }
    return true;
  });
  return hit;
}

namespace {

double so3_distance(const Eigen::Matrix3d& a, const Eigen::Matrix3d& b) {
  const double trace = a.cwiseProduct(b).sum();  // tr(a b^T)
  return std::acos(std::clamp((trace - 1.0) / 2.0, -1.0, 1.0));
}

/// Largest principal angle of q in SO(4), from tr(q) and tr(q^2): with
/// angles alpha, beta the traces give cos(alpha)+cos(beta) and
/// cos^2(alpha)+cos^2(beta), so the two cosines are roots of a quadratic.
double so4_max_angle(const Eigen::Matrix4d& q) {
  const double sum = q.trace() / 2.0;
  const double square_sum = ((q * q).trace() + 4.0) / 4.0;
  const double product = (sum * sum - square_sum) / 2.0;
  const double disc = std::max(0.0, sum * sum - 4.0 * product);
  const double smallest_cos = std::clamp((sum - std::sqrt(disc)) / 2.0, -1.0, 1.0);
  return std::acos(smallest_cos);
}

double so4_distance(const Eigen::Matrix4d& a, const Eigen::Matrix4d& b) {
  return so4_max_angle(a * b.transpose());
}

double unit_from_bits(std::mt19937_64& eng) { return (eng() >> 11) * 0x1.0p-53; }

Eigen::Vector4d gaussian4(std::mt19937_64& eng) {
  Eigen::Vector4d z;
  for (int i = 0; i < 4; i += 2) {
    double u1 = unit_from_bits(eng);
    while (u1 <= 0.0) u1 = unit_from_bits(eng);
    const double u2 = unit_from_bits(eng);
    const double radius = std::sqrt(-2.0 * std::log(u1));
    z(i) = radius * std::cos(2.0 * kPi * u2);
    z(i + 1) = radius * std::sin(2.0 * kPi * u2);
  }
  return z;
}

Eigen::Vector4d unit_quaternion(std::mt19937_64& eng) {
  while (true) {
    Eigen::Vector4d z = gaussian4(eng);
    const double norm = z.norm();
    if (norm > 1e-12) return z / norm;
  }
}

Eigen::Matrix3d quaternion_to_so3(const Eigen::Vector4d& q) {
  const double w = q(0), x = q(1), y = q(2), z = q(3);
  Eigen::Matrix3d r;
  r << 1 - 2 * (y * y + z * z), 2 * (x * y - w * z), 2 * (x * z + w * y),
      2 * (x * y + w * z), 1 - 2 * (x * x + z * z), 2 * (y * z - w * x),
      2 * (x * z - w * y), 2 * (y * z + w * x), 1 - 2 * (x * x + y * y);
  return r;
}

Eigen::Matrix4d quaternion_left_mult(const Eigen::Vector4d& q) {
  const double w = q(0), x = q(1), y = q(2), z = q(3);
  Eigen::Matrix4d l;
  l << w, -x, -y, -z,
      x, w, -z, y,
      y, z, w, -x,
      z, -y, x, w;
  return l;
}

Eigen::Matrix4d quaternion_right_mult(const Eigen::Vector4d& q) {
  const double w = q(0), x = q(1), y = q(2), z = q(3);
  Eigen::Matrix4d r;
  r << w, -x, -y, -z,
      x, w, z, -y,
      y, -z, w, x,
      z, y, -x, w;
  return r;
}

}  // namespace

double rotation_distance(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
  if (a.rows() != a.cols() || b.rows() != b.cols() || a.rows() != b.rows()) {
    throw DimensionError("rotation_distance: matrices must be square and matching");
  }
  if (a.rows() == 3) return so3_distance(a, b);
  if (a.rows() == 4) return so4_distance(a, b);
  throw DomainError("rotation_distance: only 3x3 and 4x4 rotations are supported");
}

std::vector<Eigen::MatrixXd> haar_rotations(int n, long long count, unsigned long long seed) {
  if (n != 3 && n != 4) throw DomainError("haar_rotations: only SO(3) and SO(4) are supported");
  if (count < 0) throw DomainError("haar_rotations: negative count");
  std::mt19937_64 eng(seed);
  std::vector<Eigen::MatrixXd> out;
  out.reserve(static_cast<size_t>(count));
  for (long long i = 0; i < count; ++i) {
    if (n == 3) {
      out.emplace_back(quaternion_to_so3(unit_quaternion(eng)));
    } else {
      // x -> q x conj(r) for independent unit quaternions q, r is Haar on
      // SO(4).
      const Eigen::Vector4d q = unit_quaternion(eng);
      Eigen::Vector4d r = unit_quaternion(eng);
      r.tail<3>() = -r.tail<3>();
      out.emplace_back(quaternion_left_mult(q) * quaternion_right_mult(r));
    }
  }
  return out;
}

double stabilizer_angle_floor(const Eigen::MatrixXd& r, const Eigen::VectorXd& fixed) {
  if (r.rows() != r.cols() || r.rows() != fixed.size()) {
    throw DimensionError("stabilizer_angle_floor: shape mismatch");
  }
  const double norm2 = fixed.squaredNorm();
  if (norm2 == 0.0) throw NormalizationError("stabilizer_angle_floor: zero vector");
  // If W fixes v then R W^T carries v to R v, and a rotation moves no vector
  // by more than its largest principal angle.
  const double cosine = std::clamp(fixed.dot(r * fixed) / norm2, -1.0, 1.0);
  return std::acos(cosine);
}

namespace {

int histogram_bin(double distance) {
  const int bin = static_cast<int>(distance / kPi * kCoverageHistogramBins);
  return std::clamp(bin, 0, kCoverageHistogramBins - 1);
}

struct ProfileAccumulator {
  std::vector<double> radius;
  std::vector<std::vector<long long>> histogram;

  explicit ProfileAccumulator(size_t cutoffs)
      : radius(cutoffs, 0.0),
        histogram(cutoffs, std::vector<long long>(kCoverageHistogramBins, 0)) {}
};

/// Nearest-word scan for one contiguous sample range, n fixed at compile
/// time so the distance kernel stays allocation-free.
template <int N>
void scan_samples(const std::vector<Eigen::MatrixXd>& samples, size_t begin, size_t end,
                  const std::vector<std::pair<int, Eigen::MatrixXd>>& words,
                  const std::vector<int>& bucket_of_len, size_t cutoffs,
                  ProfileAccumulator& acc) {
  using FixedM = Eigen::Matrix<double, N, N>;
  std::vector<std::pair<int, FixedM>> fixed_words;
  fixed_words.reserve(words.size());
  for (const auto& [len, m] : words) fixed_words.emplace_back(bucket_of_len[len], FixedM(m));

  std::vector<double> bucket_min(cutoffs);
  for (size_t s = begin; s < end; ++s) {
    const FixedM sample(samples[s]);
    std::fill(bucket_min.begin(), bucket_min.end(), std::numeric_limits<double>::infinity());
    for (const auto& [bucket, w] : fixed_words) {
      double d;
      if constexpr (N == 3) {
        d = so3_distance(sample, w);
      } else {
        d = so4_distance(sample, w);
      }
      if (d < bucket_min[bucket]) bucket_min[bucket] = d;
    }
    double nearest = std::numeric_limits<double>::infinity();
    for (size_t j = 0; j < cutoffs; ++j) {
      nearest = std::min(nearest, bucket_min[j]);
      if (nearest > acc.radius[j]) acc.radius[j] = nearest;
      ++acc.histogram[j][histogram_bin(nearest)];
    }
  }
}

}  // namespace

std::vector<CoverageReport> covering_profile(const std::vector<Eigen::MatrixXd>& generators,
                                             const std::vector<int>& orders,
                                             const std::vector<int>& max_lens, long long samples,
                                             unsigned long long seed,
                                             const WordStreamConfig& config, int threads) {
  if (max_lens.empty()) throw DomainError("covering_profile: need at least one cutoff");
  for (size_t i = 0; i < max_lens.size(); ++i) {
    if (max_lens[i] < 0 || (i > 0 && max_lens[i] <= max_lens[i - 1])) {
      throw DomainError("covering_profile: cutoffs must be strictly increasing and nonnegative");
    }
  }
  if (samples < 1) throw DomainError("covering_profile: need at least one sample");
  if (generators.empty()) throw DomainError("covering_profile: need at least one generator");
  const int n = static_cast<int>(generators[0].rows());
  if (n != 3 && n != 4) {
    throw DomainError("covering_profile: only SO(3) and SO(4) word sets are supported");
  }

  const int deepest = max_lens.back();
  std::vector<std::pair<int, Eigen::MatrixXd>> words;
  enumerate_words(generators, orders, deepest, config,
                  [&](const Word& w, const Eigen::MatrixXd& m) {
                    const int len = config.policy == ExponentPolicy::FromOrders
                                        ? w.syllable_count()
                                        : w.letter_count();
                    words.emplace_back(len, m);
                    return true;
                  });

  // Smallest cutoff index admitting each word length, so a prefix minimum
  // over buckets yields the nearest distance at every cutoff.
  std::vector<int> bucket_of_len(static_cast<size_t>(deepest) + 1, 0);
  for (int len = 0; len <= deepest; ++len) {
    int j = 0;
    while (max_lens[static_cast<size_t>(j)] < len) ++j;
    bucket_of_len[static_cast<size_t>(len)] = j;
  }

  const std::vector<Eigen::MatrixXd> sample_set = haar_rotations(n, samples, seed);
  const size_t cutoffs = max_lens.size();

  int worker_count = threads > 0 ? threads
                                 : static_cast<int>(std::thread::hardware_concurrency());
  worker_count = std::clamp(worker_count, 1, 8);
  worker_count = std::min<long long>(worker_count, samples);

  std::vector<ProfileAccumulator> partial(static_cast<size_t>(worker_count),
                                          ProfileAccumulator(cutoffs));
  {
    std::vector<std::thread> pool;
    const size_t per = sample_set.size() / static_cast<size_t>(worker_count);
    const size_t extra = sample_set.size() % static_cast<size_t>(worker_count);
    size_t begin = 0;
    for (int t = 0; t < worker_count; ++t) {
      const size_t end = begin + per + (static_cast<size_t>(t) < extra ? 1 : 0);
      pool.emplace_back([&, begin, end, t] {
        if (n == 3) {
          scan_samples<3>(sample_set, begin, end, words, bucket_of_len, cutoffs, partial[t]);
        } else {
          scan_samples<4>(sample_set, begin, end, words, bucket_of_len, cutoffs, partial[t]);
        }
      });
      begin = end;
    }
    for (std::thread& th : pool) th.join();
  }

  std::vector<CoverageReport> reports(cutoffs);
  for (size_t j = 0; j < cutoffs; ++j) {
    CoverageReport& rep = reports[j];
    rep.max_len = max_lens[j];
    rep.sample_count = samples;
    rep.histogram.assign(kCoverageHistogramBins, 0);
    for (const ProfileAccumulator& acc : partial) {
      rep.covering_radius = std::max(rep.covering_radius, acc.radius[j]);
      for (int b = 0; b < kCoverageHistogramBins; ++b) rep.histogram[b] += acc.histogram[j][b];
    }
  }
  return reports;
}

CoverageReport covering_estimate(const std::vector<Eigen::MatrixXd>& generators,
                                 const std::vector<int>& orders, int max_len, long long samples,
                                 unsigned long long seed, const WordStreamConfig& config,
                                 int threads) {
  return covering_profile(generators, orders, {max_len}, samples, seed, config, threads).front();
}

}  // namespace sogen
