// End-to-end tests for the sogen binary. The driver path arrives as the
// first plain argument (wired through CMake as $<TARGET_FILE:sogen>); every
// case spawns the real executable and inspects exit code, stdout, stderr.
#define DOCTEST_CONFIG_IMPLEMENT
#include <sys/wait.h>

#include <Eigen/Dense>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "json.hpp"
#include "sogen/documents.hpp"
#include "sogen/engine.hpp"
#include "sogen/lie_closure.hpp"
#include "sogen/so3.hpp"

using namespace sogen;
using nlohmann::json;

namespace {

std::string g_sogen;
std::filesystem::path g_dir;

struct RunResult {
  int code = -1;
  std::string out;
  std::string err;
};

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

// Spawns the binary through the shell; env_prefix lets a case set or unset
// variables for just that invocation.
RunResult run_cli(const std::string& args, const std::string& env_prefix = "") {
  static int counter = 0;
  std::filesystem::path out = g_dir / ("out" + std::to_string(counter) + ".txt");
  std::filesystem::path err = g_dir / ("err" + std::to_string(counter) + ".txt");
  ++counter;
  std::string cmd = env_prefix + "'" + g_sogen + "' " + args + " > '" + out.string() + "' 2> '" +
                    err.string() + "'";
  int status = std::system(cmd.c_str());
  RunResult r;
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.out = slurp(out);
  r.err = slurp(err);
  return r;
}

std::filesystem::path write_text(const std::string& name, const std::string& text) {
  std::filesystem::path p = g_dir / name;
  std::ofstream(p) << text;
  return p;
}

std::filesystem::path write_float_matrix(const std::string& name, const Eigen::MatrixXd& m) {
  MatrixDocument doc;
  doc.modes = static_cast<int>(m.rows());
  doc.mode_tag = "float";
  doc.values = m;
  return write_text(name, doc.print());
}

Eigen::Matrix3d trivial_direction() {
  Eigen::Matrix3d a = Eigen::Matrix3d::Zero();
  a(0, 1) = 1.0;
  a(0, 2) = -1.0;
  a(1, 2) = 1.0;
  a -= Eigen::Matrix3d(a.transpose()).eval();
  return a / std::sqrt(0.5 * (a.transpose() * a).trace());
}

}  // namespace

TEST_CASE("version flag and usage errors stay out of the verdict range") {
  RunResult v = run_cli("--version");
  CHECK(v.code == 0);
  CHECK(v.out.find("sogen 0.1.0") != std::string::npos);

  CHECK(run_cli("").code == 64);
  CHECK(run_cli("frobnicate").code == 64);
  CHECK(run_cli("check").code == 64);  // missing required matrix and --modes
}

TEST_CASE("check maps verdicts onto exit codes 0, 1, 2") {
  // A quarter-turn beamsplitter is a signed permutation: never universal.
  auto quarter = write_float_matrix("quarter.mat", plane_rotation(3, 0, 1, M_PI / 2.0));
  RunResult r1 = run_cli("check '" + quarter.string() + "' --modes 3");
  CHECK(r1.code == 1);
  json v1 = json::parse(r1.out);
  CHECK(v1["kind"] == "NotUniversal");
  CHECK(std::string(v1["reason"]).find("finite") != std::string::npos);

  // Exact 2x2 block with cos(theta) = 1/3: irrational angle, dense directly.
  auto third = write_text("third.mat",
                          "1/3  (0 - 2/3*sqrt(2))\n"
                          "(0 + 2/3*sqrt(2))  1/3\n");
  RunResult r0 = run_cli("check '" + third.string() + "' --modes 4 --exact");
  CHECK(r0.code == 0);
  json v0 = json::parse(r0.out);
  CHECK(v0["kind"] == "Universal");

  // An unclassifiable float angle ends inconclusive.
  auto vague = write_float_matrix("vague.mat", plane_rotation(3, 0, 1, 1.0));
  RunResult r2 = run_cli("check '" + vague.string() + "' --modes 3");
  CHECK(r2.code == 2);
  CHECK(json::parse(r2.out)["kind"] == "Inconclusive");
}

TEST_CASE("check emits a certificate that replays in-process") {
  // The direction whose orbit stays three-dimensional inside so(4).
  Eigen::Matrix3d rot = exp_so3(0.9 * trivial_direction());
  auto path = write_float_matrix("trivial.mat", rot);
  RunResult r = run_cli("check '" + path.string() + "' --modes 4");
  CHECK(r.code == 1);
  json doc = json::parse(r.out);
  CHECK(doc["kind"] == "NotUniversal");
  CHECK(std::string(doc["reason"]).find("dimension 3") != std::string::npos);

  UniversalityVerdict verdict = verdict_from_json(doc);
  std::string why;
  CHECK(replay_certificate(verdict, EngineConfig{}, &why));
  CHECK(why.empty());

  bool saw_closure = false;
  for (const auto& step : verdict.certificate) {
    if (step.name == "lie-closure") {
      saw_closure = true;
      CHECK(step.scalars.at("dim") == doctest::Approx(3.0));
    }
  }
  CHECK(saw_closure);
}

TEST_CASE("reflections are rejected with a convention message") {
  auto swap = write_text("swap.mat", "0 1 0\n1 0 0\n0 0 1\n");
  RunResult r = run_cli("check '" + swap.string() + "' --modes 3");
  CHECK(r.code > 2);
  CHECK(r.err.find("determinant-one convention") != std::string::npos);

  auto scaled = write_text("scaled.mat", "2 0\n0 2\n");
  RunResult r2 = run_cli("check '" + scaled.string() + "' --modes 3");
  CHECK(r2.code > 2);
  CHECK(r2.err.find("special orthogonal") != std::string::npos);
}

TEST_CASE("matrix parse failures report file, line, and column") {
  auto bad = write_text("bad.mat", "1 0\n0 nonsense\n");
  RunResult r = run_cli("check '" + bad.string() + "' --modes 3");
  CHECK(r.code == 65);
  CHECK(r.err.find("line 2") != std::string::npos);
  CHECK(r.err.find("column 3") != std::string::npos);
  CHECK(r.err.find("bad.mat") != std::string::npos);

  RunResult missing = run_cli("check '" + (g_dir / "absent.mat").string() + "' --modes 3");
  CHECK(missing.code == 78);
  CHECK(missing.err.find("cannot open") != std::string::npos);
}

TEST_CASE("exactness flags cross-check the detected document mode") {
  auto floaty = write_float_matrix("floaty.mat", plane_rotation(2, 0, 1, 0.3));
  RunResult r = run_cli("check '" + floaty.string() + "' --modes 3 --exact");
  CHECK(r.code > 2);
  CHECK(r.err.find("floating entries") != std::string::npos);

  auto exact = write_text("exact.mat", "1/2 (0 - 1/2*sqrt(3))\n(0 + 1/2*sqrt(3)) 1/2\n");
  RunResult r2 = run_cli("check '" + exact.string() + "' --modes 3 --float");
  CHECK(r2.code > 2);
  CHECK(r2.err.find("exact entries") != std::string::npos);

  RunResult ok = run_cli("check '" + exact.string() + "' --modes 3 --exact");
  CHECK(ok.code == 0);
}

TEST_CASE("classify-angle covers both input channels") {
  RunResult half = run_cli("classify-angle --cos 1/2");
  CHECK(half.code == 0);
  json jh = json::parse(half.out);
  CHECK(jh["kind"] == "rational-pi");
  CHECK(jh["p"] == 1);
  CHECK(jh["q"] == 3);

  json jt = json::parse(run_cli("classify-angle --theta 0.75pi").out);
  CHECK(jt["p"] == 3);
  CHECK(jt["q"] == 4);

  json jg = json::parse(run_cli("classify-angle --cos '(-1/4 + 1/4*sqrt(5))'").out);
  CHECK(jg["kind"] == "rational-pi");
  CHECK(jg["p"] == 2);
  CHECK(jg["q"] == 5);

  json ji = json::parse(run_cli("classify-angle --cos 1/3").out);
  CHECK(ji["kind"] == "irrational-pi");

  json ju = json::parse(run_cli("classify-angle --theta 1.25").out);
  CHECK(ju["kind"] == "unknown");

  CHECK(run_cli("classify-angle").code == 64);
  CHECK(run_cli("classify-angle --cos 1/2 --theta 1.0").code == 64);
}

TEST_CASE("orbit reports size and triviality") {
  auto fifth = write_float_matrix("fifth.mat", plane_rotation(3, 0, 1, 2.0 * M_PI / 5.0));
  json j = json::parse(run_cli("orbit '" + fifth.string() + "' --modes 3").out);
  CHECK(j["document"] == "report");
  CHECK(j["elements"] == 6);
  CHECK(j["trivial"] == false);
  CHECK(j["matrices"].size() == 6);

  auto triv = write_float_matrix("triv.mat", exp_so3(0.9 * trivial_direction()));
  json jt = json::parse(run_cli("orbit '" + triv.string() + "'").out);
  CHECK(jt["trivial"] == true);
  CHECK(jt["elements"] == 2);
}

TEST_CASE("closure accepts skew generators or rotations with a flag") {
  auto a = write_float_matrix("a.skew", Eigen::MatrixXd(2.0 * rotation_generator(3, 0, 1)));
  auto b = write_float_matrix("b.skew", Eigen::MatrixXd(rotation_generator(3, 1, 2)));
  json j = json::parse(run_cli("closure '" + a.string() + "' '" + b.string() + "'").out);
  CHECK(j["dimension"] == 3);
  CHECK(j["ambient_dimension"] == 3);
  CHECK(j["full"] == true);

  auto r1 = write_float_matrix("r1.mat", plane_rotation(3, 0, 1, 0.7));
  auto r2 = write_float_matrix("r2.mat", plane_rotation(3, 1, 2, 0.4));
  json jr = json::parse(
      run_cli("closure --rotations '" + r1.string() + "' '" + r2.string() + "'").out);
  CHECK(jr["dimension"] == 3);

  RunResult bad = run_cli("closure '" + r1.string() + "'");
  CHECK(bad.code > 2);
  CHECK(bad.err.find("skew") != std::string::npos);
}

TEST_CASE("genset counts two-plane products") {
  json j4 = json::parse(run_cli("genset --modes 4 --theta 0.4pi").out);
  CHECK(j4["modes"] == 4);
  CHECK(j4["products"] == 6);
  CHECK(j4["plane_pairs"].size() == 6);

  json j3 = json::parse(run_cli("genset --modes 3 --theta pi/5").out);
  CHECK(j3["products"] == 3);
}

TEST_CASE("density reports are byte-identical for a fixed seed") {
  auto a = write_float_matrix("da.mat", plane_rotation(3, 0, 1, M_PI / 2.0));
  auto b = write_float_matrix("db.mat", plane_rotation(3, 0, 2, M_PI / 2.0));
  std::string args = "density '" + a.string() + "' '" + b.string() +
                     "' --max-len 4 --samples 64 --seed 11";
  RunResult first = run_cli(args);
  RunResult second = run_cli(args);
  CHECK(first.code == 0);
  CHECK(first.out == second.out);

  json j = json::parse(first.out);
  CHECK(j["seed"] == 11);
  CHECK(j["samples"] == 64);
  CHECK(j["orders"] == json::array({4, 4}));
  CHECK(double(j["covering_radius"]) > 0.0);
  CHECK(j["histogram"].size() == 32);

  CHECK(run_cli("density '" + a.string() + "' --max-len 4 --samples 8").code == 64);  // no seed
}

TEST_CASE("search-identity finds quarter-turn relations and nothing at pi/5 order") {
  auto a = write_float_matrix("sa.mat", plane_rotation(3, 0, 1, M_PI / 2.0));
  auto b = write_float_matrix("sb.mat", plane_rotation(3, 0, 2, M_PI / 2.0));
  json j = json::parse(
      run_cli("search-identity '" + a.string() + "' '" + b.string() + "' --max-len 8").out);
  CHECK(j["found"] == true);
  CHECK(std::string(j["word"]).size() > 0);

  auto c = write_float_matrix("sc.mat", plane_rotation(3, 0, 1, 2.0 * M_PI / 5.0));
  auto d = write_float_matrix("sd.mat", plane_rotation(3, 0, 2, 2.0 * M_PI / 5.0));
  json jn = json::parse(
      run_cli("search-identity '" + c.string() + "' '" + d.string() + "' --max-len 5").out);
  CHECK(jn["found"] == false);
  CHECK(jn["orders"] == json::array({5, 5}));
}

TEST_CASE("conjecture subcommand reproduces the dimension table") {
  json j = json::parse(run_cli("conjecture --k 4").out);
  CHECK(j["k"] == 4);
  CHECK(j["triples"] == 4);
  CHECK(j["closure_dimension"] == 3);
  CHECK(j["matches"] == true);

  CHECK(run_cli("conjecture --k 10").code > 2);
}

TEST_CASE("emitted documents validate against the shipped schema") {
  json schemas = load_document_schemas("data/document_schema.json");

  auto quarter = write_float_matrix("sq.mat", plane_rotation(3, 0, 1, M_PI / 2.0));
  json verdict = json::parse(run_cli("check '" + quarter.string() + "' --modes 3").out);
  CHECK(!document_schema_violation(verdict, schemas).has_value());

  json angle = json::parse(run_cli("classify-angle --cos 1/2").out);
  CHECK(!document_schema_violation(angle, schemas).has_value());

  json report = json::parse(run_cli("orbit '" + quarter.string() + "'").out);
  CHECK(!document_schema_violation(report, schemas).has_value());
}

TEST_CASE("configuration reaches the engine with documented precedence") {
  auto cfg_a = write_text("cfg_a.json", "{\"q_max\": 77}\n");
  auto cfg_b = write_text("cfg_b.json", "{\"q_max\": 99}\n");
  auto quarter = write_float_matrix("cq.mat", plane_rotation(3, 0, 1, M_PI / 2.0));
  std::string check_args = "check '" + quarter.string() + "' --modes 3";

  json flag = json::parse(
      run_cli("--config '" + cfg_a.string() + "' " + check_args, "env -u SOGEN_CONFIG ").out);
  CHECK(flag["config"]["q_max"] == 77);

  json env = json::parse(
      run_cli(check_args, "SOGEN_CONFIG='" + cfg_b.string() + "' ").out);
  CHECK(env["config"]["q_max"] == 99);

  json both = json::parse(run_cli("--config '" + cfg_a.string() + "' " + check_args,
                                  "SOGEN_CONFIG='" + cfg_b.string() + "' ").out);
  CHECK(both["config"]["q_max"] == 77);

  json none = json::parse(run_cli(check_args, "env -u SOGEN_CONFIG ").out);
  CHECK(none["config"]["q_max"] == 10000);

  auto broken = write_text("broken.json", "{\"no_such_knob\": 1}\n");
  RunResult bad = run_cli("--config '" + broken.string() + "' " + check_args);
  CHECK(bad.code == 78);
  CHECK(bad.err.find("no_such_knob") != std::string::npos);
}

int main(int argc, char** argv) {
  if (argc > 1 && argv[1][0] != '-') g_sogen = argv[1];
  if (g_sogen.empty()) {
    std::fprintf(stderr, "usage: sogen_cli_tests <path-to-sogen-binary> [doctest options]\n");
    return 2;
  }
  std::string tmpl = (std::filesystem::temp_directory_path() / "sogen_cli_XXXXXX").string();
  std::vector<char> buf(tmpl.begin(), tmpl.end());
  buf.push_back('\0');
  if (!mkdtemp(buf.data())) {
    std::fprintf(stderr, "cannot create temp directory\n");
    return 2;
  }
  g_dir = buf.data();

  doctest::Context ctx;
  ctx.applyCommandLine(argc, argv);
  int rc = ctx.run();
  std::error_code ec;
  std::filesystem::remove_all(g_dir, ec);
  return rc;
}
