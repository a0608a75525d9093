#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

#include "doctest.h"
#include "sogen/documents.hpp"
#include "sogen/engine.hpp"
#include "sogen/errors.hpp"
#include "sogen/exact.hpp"

using namespace sogen;

namespace {

std::filesystem::path write_temp(const std::string& name, const std::string& body) {
  auto path = std::filesystem::temp_directory_path() / name;
  std::ofstream out(path);
  out << body;
  return path;
}

}  // namespace

TEST_CASE("matrix documents parse exact entries") {
  const std::string text =
      "# a plane rotation by pi/2\n"
      "0  -1  0\n"
      "1   0  0\n"
      "0   0  1\n";
  MatrixDocument doc = MatrixDocument::parse(text);
  CHECK(doc.modes == 3);
  CHECK(doc.mode_tag == "exact");
  CHECK(doc.exact.size() == 9);
  CHECK(doc.values(0, 1) == -1.0);
  CHECK(doc.values(2, 2) == 1.0);
  CHECK(doc.exact[1] == QuadSurd(-1));

  // Surd-grammar entries survive with spaces inside the parentheses.
  MatrixDocument surds = MatrixDocument::parse(
      "(1/4 + 1/4*sqrt(5))  1/2\n"
      "-1/2  (1/4 + 1/4*sqrt(5))\n");
  CHECK(surds.mode_tag == "exact");
  CHECK(surds.exact[0] == QuadSurd(Rational(1, 4), Rational(1, 4), 5));
  CHECK(surds.values(0, 0) == doctest::Approx(std::cos(M_PI / 5)).epsilon(1e-15));
}

TEST_CASE("matrix documents parse floating entries and reject mixtures") {
  MatrixDocument doc = MatrixDocument::parse("0.8, -0.6\n0.6, 0.8\n");
  CHECK(doc.mode_tag == "float");
  CHECK(doc.modes == 2);
  CHECK(doc.exact.empty());
  CHECK(doc.values(1, 0) == 0.6);

  // Integers are at home in either mode.
  CHECK(MatrixDocument::parse("1 0\n0.5 1\n").mode_tag == "float");

  try {
    MatrixDocument::parse("1/2 0\n0.5 1\n");
    FAIL("mixed document accepted");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
    CHECK(e.column() == 1);
    CHECK(std::string(e.detail()).find("mixes") != std::string::npos);
  }
}

TEST_CASE("matrix document parse errors carry line and column") {
  try {
    MatrixDocument::parse("1 0\n0 nonsense\n");
    FAIL("bad token accepted");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
    CHECK(e.column() == 3);
  }
  try {
    MatrixDocument::parse("1 0 0\n0 1\n0 0 1\n");
    FAIL("ragged matrix accepted");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
  }
  CHECK_THROWS_AS(MatrixDocument::parse(""), ParseError);
  CHECK_THROWS_AS(MatrixDocument::parse("# only comments\n"), ParseError);
  CHECK_THROWS_AS(MatrixDocument::parse("(1 + 2*sqrt(3)\n"), ParseError);
  CHECK_THROWS_AS(MatrixDocument::parse("1 0\n"), ParseError);
}

TEST_CASE("matrix document print and parse round trip in exact mode") {
  MatrixDocument doc = MatrixDocument::parse(
      "(1/4 + 1/4*sqrt(5))  -1/2  0\n"
      "1/2  (1/4 + 1/4*sqrt(5))  0\n"
      "0  0  1\n");
  MatrixDocument back = MatrixDocument::parse(doc.print());
  CHECK(back.mode_tag == "exact");
  CHECK(back.modes == doc.modes);
  for (size_t i = 0; i < doc.exact.size(); ++i) CHECK(back.exact[i] == doc.exact[i]);

  MatrixDocument fdoc = MatrixDocument::parse("0.12345678901234567 -0.25\n0.25 0.75\n");
  MatrixDocument fback = MatrixDocument::parse(fdoc.print());
  CHECK(fback.values == fdoc.values);
}

TEST_CASE("angle literals accept symbolic multiples of pi") {
  EngineConfig cfg;
  auto cls = [&](const std::string& text) { return parse_angle_literal(text).classify(cfg); };

  CHECK(cls("3pi/4").p == 3);
  CHECK(cls("3pi/4").q == 4);
  CHECK(cls("3\xCF\x80/4").p == 3);  // pi glyph
  CHECK(cls("0.4pi").p == 2);
  CHECK(cls("0.4pi").q == 5);
  CHECK(cls("0.75pi").p == 3);
  CHECK(cls("0.75pi").q == 4);
  CHECK(cls("pi/3").q == 3);
  CHECK(cls("pi").p == 1);
  CHECK(cls("pi").q == 1);
  CHECK(cls("2pi").p == 0);
  CHECK(cls("-pi/2").p == 3);  // wraps to 3/2
  CHECK(cls("1/3 pi").q == 3);
  CHECK(cls("2*pi/5").p == 2);

  AngleSpec rad = parse_angle_literal("1.25");
  CHECK(rad.value() == 1.25);
  CHECK(rad.classify(cfg).kind == AngleKind::Unknown);

  CHECK_THROWS_AS(parse_angle_literal(""), ParseError);
  CHECK_THROWS_AS(parse_angle_literal("xyz"), ParseError);
  CHECK_THROWS_AS(parse_angle_literal("pi/0"), ParseError);
  CHECK_THROWS_AS(parse_angle_literal("pi/4extra"), ParseError);
  CHECK_THROWS_AS(parse_angle_literal("1.2.3pi"), ParseError);
}

TEST_CASE("verdict documents round trip through JSON and stay replayable") {
  EngineConfig cfg;
  UniversalityVerdict v = check_two_mode(AngleSpec::pi_fraction(1, 5), 4, cfg);
  REQUIRE(v.kind == VerdictKind::Universal);

  nlohmann::json j = verdict_to_json(v, cfg);
  CHECK(j["document"] == "verdict");
  CHECK(j["kind"] == "Universal");
  CHECK(j["modes_available"] == 4);
  CHECK(j["version"] == std::string(tool_version));

  UniversalityVerdict back = verdict_from_json(j);
  CHECK(back.kind == v.kind);
  CHECK(back.modes_available == v.modes_available);
  CHECK(back.reason == v.reason);
  REQUIRE(back.certificate.size() == v.certificate.size());
  for (size_t i = 0; i < v.certificate.size(); ++i) {
    CHECK(back.certificate[i].name == v.certificate[i].name);
    CHECK(back.certificate[i].scalars == v.certificate[i].scalars);
    CHECK(back.certificate[i].labels == v.certificate[i].labels);
    REQUIRE(back.certificate[i].matrices.size() == v.certificate[i].matrices.size());
    for (size_t k = 0; k < v.certificate[i].matrices.size(); ++k)
      CHECK(back.certificate[i].matrices[k] == v.certificate[i].matrices[k]);
  }
  std::string why;
  CHECK_MESSAGE(replay_certificate(back, cfg, &why), why);

  CHECK_THROWS_AS(verdict_from_json(nlohmann::json{{"document", "report"}}), DomainError);
}

TEST_CASE("documents validate against the shipped schema") {
  nlohmann::json schemas = load_document_schemas("data/document_schema.json");
  EngineConfig cfg;

  UniversalityVerdict v = check_two_mode(AngleSpec::pi_fraction(1, 2), 3, cfg);
  nlohmann::json doc = verdict_to_json(v, cfg);
  CHECK_FALSE(document_schema_violation(doc, schemas).has_value());

  nlohmann::json broken = doc;
  broken.erase("reason");
  auto bad = document_schema_violation(broken, schemas);
  REQUIRE(bad.has_value());
  CHECK(bad->find("reason") != std::string::npos);

  broken = doc;
  broken["kind"] = "Maybe";
  CHECK(document_schema_violation(broken, schemas).has_value());

  broken = doc;
  broken["certificate"][0].erase("name");
  CHECK(document_schema_violation(broken, schemas).has_value());

  nlohmann::json angle = angle_class_to_json(classify_exact(QuadSurd(Rational(1, 2))));
  CHECK(angle["kind"] == "rational-pi");
  CHECK(angle["p"] == 1);
  CHECK(angle["q"] == 3);
  CHECK_FALSE(document_schema_violation(angle, schemas).has_value());

  nlohmann::json report = report_document("orbit");
  report["elements"] = 4;
  CHECK_FALSE(document_schema_violation(report, schemas).has_value());

  CHECK(document_schema_violation(nlohmann::json::array(), schemas).has_value());
  CHECK(document_schema_violation(nlohmann::json{{"document", "poem"}}, schemas).has_value());
  CHECK_THROWS_AS(load_document_schemas("data/no_such_schema.json"), ConfigError);
}

TEST_CASE("engine configuration loads from JSON with strict keys") {
  auto good = write_temp("sogen_cfg_good.json",
                         R"({"rank_tol": 1e-7, "q_max": 500, "geodetic_table_path": "data/geodetic_exceptions.txt"})");
  EngineConfig cfg = load_engine_config(good.string());
  CHECK(cfg.rank_tol == 1e-7);
  CHECK(cfg.q_max == 500);
  CHECK(cfg.geodetic_table_path == "data/geodetic_exceptions.txt");
  CHECK(cfg.dedup_tol == EngineConfig{}.dedup_tol);

  auto unknown = write_temp("sogen_cfg_unknown.json", R"({"rank_tolerance": 1e-7})");
  CHECK_THROWS_AS(load_engine_config(unknown.string()), ConfigError);
  auto wrong = write_temp("sogen_cfg_wrong.json", R"({"q_max": "many"})");
  CHECK_THROWS_AS(load_engine_config(wrong.string()), ConfigError);
  auto badjson = write_temp("sogen_cfg_bad.json", "{ not json");
  CHECK_THROWS_AS(load_engine_config(badjson.string()), ConfigError);
  auto negative = write_temp("sogen_cfg_neg.json", R"({"rank_tol": -1.0})");
  CHECK_THROWS_AS(load_engine_config(negative.string()), ConfigError);
  CHECK_THROWS_AS(load_engine_config("/no/such/config.json"), ConfigError);

  for (const auto& p : {good, unknown, wrong, badjson, negative}) std::filesystem::remove(p);
}

TEST_CASE("configuration resolution prefers the explicit path over the environment") {
  auto a = write_temp("sogen_cfg_a.json", R"({"q_max": 111})");
  auto b = write_temp("sogen_cfg_b.json", R"({"q_max": 222})");

  unsetenv("SOGEN_CONFIG");
  CHECK(resolve_engine_config(std::nullopt).q_max == EngineConfig{}.q_max);
  CHECK(resolve_engine_config(a.string()).q_max == 111);

  setenv("SOGEN_CONFIG", b.string().c_str(), 1);
  CHECK(resolve_engine_config(std::nullopt).q_max == 222);
  CHECK(resolve_engine_config(a.string()).q_max == 111);
  unsetenv("SOGEN_CONFIG");

  std::filesystem::remove(a);
  std::filesystem::remove(b);
}
