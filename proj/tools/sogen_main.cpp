// Copyright (c) 2026 The sogen authors
// SPDX-License-Identifier: MIT
//
// Command-line front end. Subcommands map one-to-one onto library entry
// points; every successful invocation prints a single JSON document on
// stdout. Exit codes for `check`: 0 universal, 1 not universal,
// 2 inconclusive. All failures exit above 2 (64 usage, 65 bad input data,
// 78 bad configuration, 70 anything else).

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "sogen/angle_class.hpp"
#include "sogen/documents.hpp"
#include "sogen/engine.hpp"
#include "sogen/errors.hpp"
#include "sogen/exact.hpp"
#include "sogen/lie_closure.hpp"
#include "sogen/perm_orbit.hpp"
#include "sogen/so3.hpp"
#include "sogen/words.hpp"

namespace {

using nlohmann::json;

constexpr int kExitUsage = 64;
constexpr int kExitData = 65;
constexpr int kExitSoftware = 70;
constexpr int kExitConfig = 78;

int exit_code_for(sogen::VerdictKind kind) {
  switch (kind) {
    case sogen::VerdictKind::Universal:
      return 0;
    case sogen::VerdictKind::NotUniversal:
      return 1;
    case sogen::VerdictKind::Inconclusive:
      return 2;
  }
  return kExitSoftware;
}

// Reads a matrix document from a file, or from stdin when path is "-".
sogen::MatrixDocument read_matrix_document(const std::string& path) {
  std::string text;
  if (path == "-") {
    std::ostringstream buf;
    buf << std::cin.rdbuf();
    text = buf.str();
  } else {
    std::ifstream in(path);
    if (!in) throw sogen::ConfigError("cannot open matrix file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    text = buf.str();
  }
  try {
    return sogen::MatrixDocument::parse(text);
  } catch (const sogen::ParseError& e) {
    throw sogen::ParseError(path + ": " + e.detail(), e.line(), e.column());
  }
}

// Enforces the determinant-one convention with a pointed message for the
// reflection case, which is the mistake people actually make.
void require_special_orthogonal(const Eigen::MatrixXd& m, const std::string& path) {
  const int n = static_cast<int>(m.rows());
  double ortho = (m.transpose() * m - Eigen::MatrixXd::Identity(n, n)).cwiseAbs().maxCoeff();
  double det = m.determinant();
  if (ortho <= 1e-9 && det < 0.0) {
    throw sogen::NormalizationError(
        path + ": matrix is orthogonal with determinant -1; this tool uses the "
               "determinant-one convention, so compose with one mode swap to flip the sign");
  }
  if (ortho > 1e-9 || std::abs(det - 1.0) > 1e-9) {
    throw sogen::NormalizationError(path + ": matrix is not special orthogonal within 1e-9");
  }
}

json matrix_to_json(const Eigen::MatrixXd& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(row);
  }
  return rows;
}

// Rotation order of each generator, from its classified spectrum: the lcm
// of the per-plane orders, or 0 (infinite) when any plane angle is not a
// recognized rational multiple of pi.
std::vector<int> generator_orders(const std::vector<Eigen::MatrixXd>& gens,
                                  const sogen::EngineConfig& cfg) {
  std::vector<int> orders;
  orders.reserve(gens.size());
  for (const auto& g : gens) {
    sogen::SpectrumAngles sa = sogen::spectrum_angles(g);
    long ord = 1;
    bool infinite = false;
    for (double a : sa.angles) {
      if (a < cfg.angle_tol) continue;
      sogen::AngleClass cls = sogen::classify_numeric(a, cfg.q_max, cfg.angle_tol);
      if (cls.kind != sogen::AngleKind::RationalPi) {
        infinite = true;
        break;
      }
      ord = std::lcm(ord, sogen::rotation_order(cls));
    }
    orders.push_back(infinite ? 0 : static_cast<int>(ord));
  }
  return orders;
}

std::vector<Eigen::MatrixXd> read_rotation_generators(const std::vector<std::string>& paths) {
  std::vector<Eigen::MatrixXd> gens;
  gens.reserve(paths.size());
  for (const auto& p : paths) {
    sogen::MatrixDocument doc = read_matrix_document(p);
    require_special_orthogonal(doc.values, p);
    if (!gens.empty() && gens.front().rows() != doc.values.rows()) {
      throw sogen::DimensionError("generators have mismatched sizes: " + p);
    }
    gens.push_back(doc.values);
  }
  return gens;
}

sogen::ExponentPolicy parse_policy(const std::string& name) {
  if (name == "orders") return sogen::ExponentPolicy::FromOrders;
  if (name == "letters") return sogen::ExponentPolicy::LettersOnly;
  throw sogen::ConfigError("unknown exponent policy: " + name + " (use orders or letters)");
}

int run_check(const std::string& path, int modes, bool want_exact, bool want_float,
              const std::vector<std::string>& cos_exprs, const sogen::EngineConfig& cfg) {
  sogen::MatrixDocument doc = read_matrix_document(path);
  if (want_exact && !doc.is_exact()) {
    throw sogen::PreconditionError(path + ": --exact given but the document has floating entries");
  }
  if (want_float && doc.is_exact()) {
    throw sogen::PreconditionError(path + ": --float given but the document has exact entries");
  }
  require_special_orthogonal(doc.values, path);

  std::vector<sogen::QuadSurd> cosines;
  for (const auto& expr : cos_exprs) cosines.push_back(sogen::QuadSurd::parse(expr));
  if (cosines.empty() && doc.is_exact()) {
    // Convenience derivations where the spectral cosine is a rational image
    // of the entries: cos(theta) itself for a 2x2 block, (tr - 1)/2 for 3x3.
    if (doc.modes == 2) {
      cosines.push_back(doc.exact[0]);
    } else if (doc.modes == 3) {
      try {
        sogen::QuadSurd tr = doc.exact[0] + doc.exact[4] + doc.exact[8];
        cosines.push_back((tr - sogen::QuadSurd(sogen::Rational(1))) *
                          sogen::QuadSurd(sogen::Rational(1, 2)));
      } catch (const sogen::FieldMismatchError&) {
        // Entries live in different quadratic fields; fall back to numeric.
      }
    }
  }

  sogen::UniversalityVerdict verdict = sogen::check_m_mode(doc.values, modes, cosines, cfg);
  std::cout << sogen::verdict_to_json(verdict, cfg).dump(2) << "\n";
  return exit_code_for(verdict.kind);
}

int run_classify(const std::string& cos_expr, const std::string& theta_expr,
                 const sogen::EngineConfig& cfg) {
  sogen::AngleClass cls;
  if (!cos_expr.empty()) {
    cls = sogen::classify_exact(sogen::QuadSurd::parse(cos_expr));
  } else {
    cls = sogen::parse_angle_literal(theta_expr).classify(cfg);
  }
  std::cout << sogen::angle_class_to_json(cls).dump(2) << "\n";
  return 0;
}

int run_orbit(const std::string& path, int modes, const sogen::EngineConfig& cfg) {
  sogen::MatrixDocument doc = read_matrix_document(path);
  require_special_orthogonal(doc.values, path);
  int n = modes > 0 ? modes : doc.modes;
  std::vector<int> first(doc.modes);
  std::iota(first.begin(), first.end(), 0);
  Eigen::MatrixXd big = sogen::embed(doc.values, n, first, sogen::EmbedKind::Rotation);
  sogen::OrbitSet orb = sogen::orbit(big, cfg.dedup_tol, 8);

  json out = sogen::report_document("orbit");
  out["modes"] = n;
  out["elements"] = orb.elements.size();
  out["trivial"] = orb.trivial;
  if (orb.elements.size() <= 24) {
    json mats = json::array();
    for (const auto& e : orb.elements) mats.push_back(matrix_to_json(e));
    out["matrices"] = mats;
  }
  std::cout << out.dump(2) << "\n";
  return 0;
}

int run_closure(const std::vector<std::string>& paths, bool rotations,
                const sogen::EngineConfig& cfg) {
  std::vector<Eigen::MatrixXd> gens;
  for (const auto& p : paths) {
    sogen::MatrixDocument doc = read_matrix_document(p);
    Eigen::MatrixXd m = doc.values;
    if (rotations) {
      require_special_orthogonal(m, p);
      m = sogen::log_special_orthogonal(m);
    } else {
      double skew = (m + m.transpose()).cwiseAbs().maxCoeff();
      if (skew > 1e-9) {
        throw sogen::NormalizationError(
            p + ": matrix is not skew-symmetric within 1e-9 (pass --rotations for group "
                "elements)");
      }
    }
    if (!gens.empty() && gens.front().rows() != m.rows()) {
      throw sogen::DimensionError("closure inputs have mismatched sizes: " + p);
    }
    gens.push_back(m);
  }
  sogen::LieSpan span = sogen::lie_closure(gens, cfg.rank_tol);

  json out = sogen::report_document("closure");
  out["generators"] = paths.size();
  out["dimension"] = span.dim();
  out["ambient_dimension"] = span.ambient_dim();
  out["full"] = span.is_full();
  std::cout << out.dump(2) << "\n";
  return 0;
}

int run_genset(int modes, const std::string& theta_expr) {
  sogen::AngleSpec spec = sogen::parse_angle_literal(theta_expr);
  sogen::GeneratingSet gs = sogen::build_generating_set(modes, spec.value());

  json out = sogen::report_document("genset");
  out["modes"] = gs.n;
  out["theta"] = gs.theta;
  out["products"] = gs.products.size();
  json pairs = json::array();
  for (const auto& pr : gs.pairs) {
    pairs.push_back(json::array({json::array({pr[0], pr[1]}), json::array({pr[2], pr[3]})}));
  }
  out["plane_pairs"] = pairs;
  std::cout << out.dump(2) << "\n";
  return 0;
}

int run_density(const std::vector<std::string>& paths, int max_len, long long samples,
                unsigned long long seed, const std::string& policy_name, long long budget,
                const sogen::EngineConfig& cfg) {
  std::vector<Eigen::MatrixXd> gens = read_rotation_generators(paths);
  std::vector<int> orders = generator_orders(gens, cfg);
  sogen::WordStreamConfig wc;
  wc.policy = parse_policy(policy_name);
  wc.budget = budget > 0 ? budget : cfg.word_budget;
  sogen::CoverageReport rep = sogen::covering_estimate(gens, orders, max_len, samples, seed, wc);

  json out = sogen::report_document("density");
  out["generators"] = paths.size();
  out["orders"] = orders;
  out["policy"] = policy_name;
  out["max_len"] = rep.max_len;
  out["samples"] = rep.sample_count;
  out["seed"] = seed;
  out["covering_radius"] = rep.covering_radius;
  out["histogram"] = rep.histogram;
  std::cout << out.dump(2) << "\n";
  return 0;
}

int run_search_identity(const std::vector<std::string>& paths, int max_len, double tol,
                        const std::string& policy_name, long long budget,
                        const sogen::EngineConfig& cfg) {
  std::vector<Eigen::MatrixXd> gens = read_rotation_generators(paths);
  std::vector<int> orders = generator_orders(gens, cfg);
  sogen::WordStreamConfig wc;
  wc.policy = parse_policy(policy_name);
  wc.budget = budget > 0 ? budget : cfg.word_budget;
  std::optional<sogen::Word> word = sogen::identity_word_search(gens, orders, max_len, tol, wc);

  json out = sogen::report_document("search-identity");
  out["generators"] = paths.size();
  out["orders"] = orders;
  out["policy"] = policy_name;
  out["max_len"] = max_len;
  out["tol"] = tol;
  out["found"] = word.has_value();
  if (word) {
    out["word"] = word->to_string();
    json syll = json::array();
    for (const auto& s : word->letters) syll.push_back(json::array({s.generator, s.exponent}));
    out["syllables"] = syll;
    out["letters"] = word->letter_count();
  }
  std::cout << out.dump(2) << "\n";
  return 0;
}

int run_conjecture(int k) {
  sogen::ConjectureReport rep = sogen::conjecture_experiment(k);
  json out = sogen::report_document("conjecture");
  out["k"] = rep.k;
  out["triples"] = rep.triples;
  out["closure_dimension"] = rep.closure_dim;
  out["conjectured_dimension"] = rep.conjectured_dim;
  out["matches"] = rep.matches;
  std::cout << out.dump(2) << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "sogen: decides whether a real beamsplitter, together with all mode "
      "permutations, densely generates the rotation group on N modes"};
  app.set_version_flag("--version", std::string("sogen ") + sogen::tool_version);
  app.require_subcommand(1);

  std::string config_path;
  app.add_option("--config", config_path,
                 "JSON engine configuration file (overrides the SOGEN_CONFIG variable)");

  // check
  auto* check = app.add_subcommand("check", "certify universality of a beamsplitter matrix");
  std::string check_path;
  int check_modes = 0;
  bool check_exact = false;
  bool check_float = false;
  std::vector<std::string> check_cos;
  check->add_option("matrix", check_path, "matrix document file (- for stdin)")->required();
  check->add_option("--modes", check_modes, "total number of optical modes N")->required();
  auto* exact_flag = check->add_flag("--exact", check_exact, "require exact entries");
  auto* float_flag = check->add_flag("--float", check_float, "require floating entries");
  exact_flag->excludes(float_flag);
  check->add_option("--cos", check_cos,
                    "exact cosine of a spectral angle, e.g. \"(1/4 + 1/4*sqrt(5))\" (repeatable)");

  // classify-angle
  auto* classify =
      app.add_subcommand("classify-angle", "decide whether an angle is a rational multiple of pi");
  std::string cls_cos;
  std::string cls_theta;
  auto* cos_opt = classify->add_option("--cos", cls_cos, "exact cosine in the surd grammar");
  auto* theta_opt =
      classify->add_option("--theta", cls_theta, "angle literal: \"3pi/4\", \"0.4pi\", or radians");
  cos_opt->excludes(theta_opt);

  // orbit
  auto* orbit_cmd =
      app.add_subcommand("orbit", "enumerate the mode-permutation orbit of a rotation");
  std::string orbit_path;
  int orbit_modes = 0;
  orbit_cmd->add_option("matrix", orbit_path, "matrix document file")->required();
  orbit_cmd->add_option("--modes", orbit_modes, "embed into this many modes (default: as given)");

  // closure
  auto* closure_cmd =
      app.add_subcommand("closure", "Lie-algebra closure dimension of skew generators");
  std::vector<std::string> closure_paths;
  bool closure_rotations = false;
  closure_cmd->add_option("matrices", closure_paths, "skew-symmetric matrix files")
      ->required()
      ->expected(-1);
  closure_cmd->add_flag("--rotations", closure_rotations,
                        "inputs are rotations; take principal logarithms first");

  // genset
  auto* genset_cmd = app.add_subcommand(
      "genset", "build the substitution generating set of two-plane rotation products");
  int genset_modes = 0;
  std::string genset_theta;
  genset_cmd->add_option("--modes", genset_modes, "number of modes N")->required();
  genset_cmd->add_option("--theta", genset_theta, "mixing angle literal")->required();

  // density
  auto* density_cmd = app.add_subcommand(
      "density", "estimate the covering radius of words in the given rotations");
  std::vector<std::string> density_paths;
  int density_max_len = 6;
  long long density_samples = 1000;
  unsigned long long density_seed = 0;
  std::string density_policy = "letters";
  long long density_budget = 0;
  density_cmd->add_option("matrices", density_paths, "rotation generator files")
      ->required()
      ->expected(-1);
  density_cmd->add_option("--max-len", density_max_len, "word length cutoff");
  density_cmd->add_option("--samples", density_samples, "Haar sample count");
  density_cmd->add_option("--seed", density_seed, "sampling seed (reports are reproducible)")
      ->required();
  density_cmd->add_option("--policy", density_policy, "exponent policy: orders | letters");
  density_cmd->add_option("--budget", density_budget, "word enumeration budget override");

  // search-identity
  auto* search_cmd =
      app.add_subcommand("search-identity", "breadth-first search for a nontrivial identity word");
  std::vector<std::string> search_paths;
  int search_max_len = 8;
  double search_tol = 1e-9;
  std::string search_policy = "orders";
  long long search_budget = 0;
  search_cmd->add_option("matrices", search_paths, "rotation generator files")
      ->required()
      ->expected(-1);
  search_cmd->add_option("--max-len", search_max_len, "word length cutoff");
  search_cmd->add_option("--tol", search_tol, "identity tolerance (max-abs entry metric)");
  search_cmd->add_option("--policy", search_policy, "exponent policy: orders | letters");
  search_cmd->add_option("--budget", search_budget, "word enumeration budget override");

  // conjecture
  auto* conjecture_cmd = app.add_subcommand(
      "conjecture", "closure dimension of the orbit of one antisymmetric triple pattern");
  int conjecture_k = 0;
  conjecture_cmd->add_option("--k", conjecture_k, "number of modes, 4 through 9")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : kExitUsage;
  }

  try {
    std::optional<std::string> cli_config;
    if (!config_path.empty()) cli_config = config_path;
    sogen::EngineConfig cfg = sogen::resolve_engine_config(cli_config);

    if (check->parsed()) {
      return run_check(check_path, check_modes, check_exact, check_float, check_cos, cfg);
    }
    if (classify->parsed()) {
      if (cls_cos.empty() == cls_theta.empty()) {
        std::cerr << "sogen: classify-angle needs exactly one of --cos or --theta\n";
        return kExitUsage;
      }
      return run_classify(cls_cos, cls_theta, cfg);
    }
    if (orbit_cmd->parsed()) return run_orbit(orbit_path, orbit_modes, cfg);
    if (closure_cmd->parsed()) return run_closure(closure_paths, closure_rotations, cfg);
    if (genset_cmd->parsed()) return run_genset(genset_modes, genset_theta);
    if (density_cmd->parsed()) {
      return run_density(density_paths, density_max_len, density_samples, density_seed,
                         density_policy, density_budget, cfg);
    }
    if (search_cmd->parsed()) {
      return run_search_identity(search_paths, search_max_len, search_tol, search_policy,
                                 search_budget, cfg);
    }
    if (conjecture_cmd->parsed()) return run_conjecture(conjecture_k);
    std::cerr << "sogen: no subcommand selected\n";
    return kExitUsage;
  } catch (const sogen::ParseError& e) {
    std::cerr << "sogen: " << e.what() << "\n";
    return kExitData;
  } catch (const sogen::ConfigError& e) {
    std::cerr << "sogen: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "sogen: " << e.what() << "\n";
    return kExitSoftware;
  }
}
