// Copyright (c) 2026 The sogen authors
// SPDX-License-Identifier: MIT

#include "sogen/documents.hpp"

#include <algorithm>
#include <cctype>
#include <cerrno>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <limits>
#include <sstream>

namespace sogen {

namespace {

struct Token {
  std::string text;
  int line;
  int column;
};

/// Splits matrix text into per-row token lists. Parenthesized groups (the
/// surd grammar contains spaces) stay single tokens.
std::vector<std::vector<Token>> tokenize_matrix(const std::string& text) {
  std::vector<std::vector<Token>> rows;
  int line_no = 0;
  std::istringstream lines(text);
  std::string line;
  while (std::getline(lines, line)) {
    ++line_no;
    size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::vector<Token> row;
    size_t i = 0;
    while (i < line.size()) {
      if (std::isspace(static_cast<unsigned char>(line[i])) || line[i] == ',') {
        ++i;
        continue;
      }
      size_t start = i;
      std::string tok;
      while (i < line.size() &&
             !(std::isspace(static_cast<unsigned char>(line[i])) || line[i] == ',')) {
        if (line[i] == '(') {
          int depth = 0;
          do {
            if (line[i] == '(') ++depth;
            if (line[i] == ')') --depth;
            tok += line[i++];
          } while (i < line.size() && depth > 0);
          if (depth > 0)
            throw ParseError("unterminated parenthesis", line_no,
                             static_cast<int>(start) + 1);
        } else {
          tok += line[i++];
        }
      }
      row.push_back({tok, line_no, static_cast<int>(start) + 1});
    }
    if (!row.empty()) rows.push_back(std::move(row));
  }
  return rows;
}

bool parse_float_token(const std::string& t, double* out) {
  const char* begin = t.c_str();
  char* end = nullptr;
  errno = 0;
  double v = std::strtod(begin, &end);
  if (end != begin + t.size() || t.empty() || errno == ERANGE) return false;
  *out = v;
  return true;
}

std::string format_double(double v) {
  std::ostringstream os;
  os << std::setprecision(17) << v;
  return os.str();
}

long parse_long_digits(const std::string& t, int line, int column, const char* what) {
  if (t.empty() || t.size() > 12 ||
      !std::all_of(t.begin(), t.end(), [](char c) { return c >= '0' && c <= '9'; }))
    throw ParseError(std::string("expected ") + what + ", got '" + t + "'", line, column);
  return std::stol(t);
}

std::optional<std::string> check_schema_node(const nlohmann::json& node,
                                             const nlohmann::json& schema,
                                             const std::string& path) {
  if (schema.contains("enum")) {
    bool hit = false;
    for (const auto& allowed : schema["enum"]) hit = hit || node == allowed;
    if (!hit) return path + ": value not among the allowed alternatives";
  }
  if (schema.contains("type")) {
    const std::string t = schema["type"].get<std::string>();
    bool ok = (t == "object" && node.is_object()) || (t == "array" && node.is_array()) ||
              (t == "string" && node.is_string()) || (t == "number" && node.is_number()) ||
              (t == "integer" && node.is_number_integer()) ||
              (t == "boolean" && node.is_boolean());
    if (!ok) return path + ": expected " + t;
  }
  if (schema.contains("required"))
    for (const auto& key : schema["required"]) {
      const std::string k = key.get<std::string>();
      if (!node.contains(k)) return path + ": missing required field '" + k + "'";
    }
  if (schema.contains("properties") && node.is_object())
    for (auto it = schema["properties"].begin(); it != schema["properties"].end(); ++it)
      if (node.contains(it.key()))
        if (auto bad = check_schema_node(node[it.key()], it.value(), path + "." + it.key()))
          return bad;
  if (schema.contains("items") && node.is_array())
    for (size_t i = 0; i < node.size(); ++i)
      if (auto bad = check_schema_node(node[i], schema["items"],
                                       path + "[" + std::to_string(i) + "]"))
        return bad;
  return std::nullopt;
}

}  // namespace

MatrixDocument MatrixDocument::parse(const std::string& text) {
  auto rows = tokenize_matrix(text);
  if (rows.empty()) throw ParseError("empty matrix document", 1, 1);
  const size_t m = rows.size();
  for (const auto& row : rows)
    if (row.size() != m) {
      std::ostringstream msg;
      msg << "matrix must be square: " << m << " rows but this row has " << row.size()
          << " entries";
      throw ParseError(msg.str(), row.front().line, row.front().column);
    }

  // A token is exact when the surd grammar accepts it; plain integers parse
  // under both readings and follow the rest of the document.
  const Token* first_exact_only = nullptr;
  const Token* first_float_only = nullptr;
  for (const auto& row : rows)
    for (const auto& tok : row) {
      bool is_exact = true;
      try {
        QuadSurd::parse(tok.text);
      } catch (const std::exception&) {
        is_exact = false;
      }
      double ignored;
      bool is_float = parse_float_token(tok.text, &ignored);
      if (!is_exact && !is_float)
        throw ParseError("unrecognized scalar '" + tok.text + "'", tok.line, tok.column);
      if (is_exact && !is_float && !first_exact_only) first_exact_only = &tok;
      if (is_float && !is_exact && !first_float_only) first_float_only = &tok;
    }
  if (first_exact_only && first_float_only) {
    const Token* later = first_exact_only->line > first_float_only->line ||
                                 (first_exact_only->line == first_float_only->line &&
                                  first_exact_only->column > first_float_only->column)
                             ? first_exact_only
                             : first_float_only;
    throw ParseError("matrix mixes exact and floating entries", later->line, later->column);
  }

  MatrixDocument doc;
  doc.modes = static_cast<int>(m);
  doc.values.resize(m, m);
  if (first_float_only) {
    doc.mode_tag = "float";
    for (size_t r = 0; r < m; ++r)
      for (size_t c = 0; c < m; ++c) {
        double v = 0;
        parse_float_token(rows[r][c].text, &v);
        doc.values(r, c) = v;
      }
  } else {
    doc.mode_tag = "exact";
    doc.exact.reserve(m * m);
    for (size_t r = 0; r < m; ++r)
      for (size_t c = 0; c < m; ++c) {
        QuadSurd v = QuadSurd::parse(rows[r][c].text);
        doc.values(r, c) = v.to_double();
        doc.exact.push_back(std::move(v));
      }
  }
  return doc;
}

std::string MatrixDocument::print() const {
  std::ostringstream os;
  for (int r = 0; r < modes; ++r) {
    for (int c = 0; c < modes; ++c) {
      if (c) os << "  ";
      if (is_exact())
        os << exact[static_cast<size_t>(r) * modes + c].str();
      else
        os << format_double(values(r, c));
    }
    os << "\n";
  }
  return os.str();
}

AngleSpec parse_angle_literal(const std::string& text) {
  // Normalize the pi glyph (UTF-8 0xCF 0x80) and strip whitespace.
  std::string s;
  s.reserve(text.size());
  for (size_t i = 0; i < text.size();) {
    if (i + 1 < text.size() && static_cast<unsigned char>(text[i]) == 0xCF &&
        static_cast<unsigned char>(text[i + 1]) == 0x80) {
      s += "pi";
      i += 2;
    } else if (std::isspace(static_cast<unsigned char>(text[i]))) {
      ++i;
    } else {
      s += text[i++];
    }
  }
  if (s.empty()) throw ParseError("empty angle literal", 1, 1);

  size_t pos = s.find("pi");
  if (pos == std::string::npos) {
    double v = 0;
    if (!parse_float_token(s, &v))
      throw ParseError("expected a radian value or a multiple of pi, got '" + text + "'", 1,
                       1);
    return AngleSpec::radians(v);
  }

  std::string prefix = s.substr(0, pos);
  std::string suffix = s.substr(pos + 2);
  long sign = 1;
  if (!prefix.empty() && (prefix.front() == '+' || prefix.front() == '-')) {
    if (prefix.front() == '-') sign = -1;
    prefix.erase(prefix.begin());
  }
  if (!prefix.empty() && prefix.back() == '*') prefix.pop_back();

  long num = 1, den = 1;
  if (!prefix.empty()) {
    size_t dot = prefix.find('.');
    size_t slash = prefix.find('/');
    if (dot != std::string::npos) {
      std::string ip = prefix.substr(0, dot), fp = prefix.substr(dot + 1);
      if (ip.empty() && fp.empty())
        throw ParseError("malformed decimal coefficient '" + prefix + "'", 1, 1);
      if (fp.size() > 9)
        throw ParseError("decimal coefficient carries too many digits", 1, 1);
      num = ip.empty() ? 0 : parse_long_digits(ip, 1, 1, "digits before the decimal point");
      den = 1;
      for (char c : fp) {
        if (c < '0' || c > '9')
          throw ParseError("malformed decimal coefficient '" + prefix + "'", 1, 1);
        num = num * 10 + (c - '0');
        den *= 10;
      }
    } else if (slash != std::string::npos) {
      num = parse_long_digits(prefix.substr(0, slash), 1, 1, "a numerator");
      den = parse_long_digits(prefix.substr(slash + 1), 1, 1, "a denominator");
      if (den == 0) throw ParseError("zero denominator in angle literal", 1, 1);
    } else {
      num = parse_long_digits(prefix, 1, 1, "an integer coefficient");
    }
  }

  long extra_den = 1;
  if (!suffix.empty()) {
    if (suffix.front() != '/')
      throw ParseError("unexpected text after pi in '" + text + "'", 1,
                       static_cast<int>(pos) + 3);
    extra_den = parse_long_digits(suffix.substr(1), 1, static_cast<int>(pos) + 4,
                                  "a denominator");
    if (extra_den == 0) throw ParseError("zero denominator in angle literal", 1, 1);
  }
  if (den > std::numeric_limits<long>::max() / extra_den)
    throw ParseError("angle denominator overflows", 1, 1);
  return AngleSpec::pi_fraction(sign * num, den * extra_den);
}

nlohmann::json certificate_step_to_json(const CertStep& s) {
  nlohmann::json inputs = nlohmann::json::object();
  for (const auto& [k, v] : s.labels) inputs[k] = v;
  nlohmann::json outputs = nlohmann::json::object();
  nlohmann::json tolerances = nlohmann::json::object();
  for (const auto& [k, v] : s.scalars) {
    outputs[k] = v;
    if (k.find("tol") != std::string::npos) tolerances[k] = v;
  }
  nlohmann::json matrices = nlohmann::json::array();
  for (const auto& m : s.matrices) {
    nlohmann::json rows = nlohmann::json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
      nlohmann::json row = nlohmann::json::array();
      for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
      rows.push_back(std::move(row));
    }
    matrices.push_back(std::move(rows));
  }
  return nlohmann::json{{"name", s.name},       {"note", s.note},
                        {"inputs", inputs},     {"outputs", outputs},
                        {"tolerances", tolerances}, {"matrices", matrices}};
}

CertStep certificate_step_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("name"))
    throw DomainError("certificate step document lacks a name");
  CertStep s;
  s.name = j["name"].get<std::string>();
  if (j.contains("note")) s.note = j["note"].get<std::string>();
  if (j.contains("inputs"))
    for (auto it = j["inputs"].begin(); it != j["inputs"].end(); ++it)
      s.labels[it.key()] = it.value().get<std::string>();
  if (j.contains("outputs"))
    for (auto it = j["outputs"].begin(); it != j["outputs"].end(); ++it)
      s.scalars[it.key()] = it.value().get<double>();
  if (j.contains("matrices"))
    for (const auto& mj : j["matrices"]) {
      if (!mj.is_array() || mj.empty())
        throw DomainError("certificate step matrix must be a nonempty array of rows");
      const size_t nr = mj.size(), nc = mj[0].size();
      Eigen::MatrixXd m(nr, nc);
      for (size_t r = 0; r < nr; ++r) {
        if (mj[r].size() != nc) throw DomainError("ragged certificate step matrix");
        for (size_t c = 0; c < nc; ++c) m(r, c) = mj[r][c].get<double>();
      }
      s.matrices.push_back(std::move(m));
    }
  return s;
}

nlohmann::json engine_config_to_json(const EngineConfig& cfg) {
  return nlohmann::json{{"rank_tol", cfg.rank_tol},
                        {"dedup_tol", cfg.dedup_tol},
                        {"angle_tol", cfg.angle_tol},
                        {"identity_tol", cfg.identity_tol},
                        {"q_max", cfg.q_max},
                        {"substitution_depth", cfg.substitution_depth},
                        {"word_budget", cfg.word_budget},
                        {"geodetic_table_path", cfg.geodetic_table_path}};
}

nlohmann::json verdict_to_json(const UniversalityVerdict& verdict, const EngineConfig& cfg) {
  nlohmann::json steps = nlohmann::json::array();
  for (const auto& s : verdict.certificate) steps.push_back(certificate_step_to_json(s));
  return nlohmann::json{{"document", "verdict"},
                        {"tool", "sogen"},
                        {"version", tool_version},
                        {"kind", verdict_kind_name(verdict.kind)},
                        {"modes_available", verdict.modes_available},
                        {"reason", verdict.reason},
                        {"certificate", steps},
                        {"config", engine_config_to_json(cfg)}};
}

UniversalityVerdict verdict_from_json(const nlohmann::json& j) {
  if (!j.is_object() || j.value("document", "") != std::string("verdict"))
    throw DomainError("not a verdict document");
  UniversalityVerdict v;
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "Universal")
    v.kind = VerdictKind::Universal;
  else if (kind == "NotUniversal")
    v.kind = VerdictKind::NotUniversal;
  else if (kind == "Inconclusive")
    v.kind = VerdictKind::Inconclusive;
  else
    throw DomainError("unknown verdict kind '" + kind + "'");
  v.modes_available = j.at("modes_available").get<int>();
  v.reason = j.value("reason", "");
  if (j.contains("certificate"))
    for (const auto& sj : j["certificate"]) v.certificate.push_back(certificate_step_from_json(sj));
  return v;
}

nlohmann::json angle_class_to_json(const AngleClass& cls) {
  nlohmann::json j{{"document", "angle-class"},
                   {"tool", "sogen"},
                   {"version", tool_version},
                   {"kind", angle_kind_name(cls.kind)},
                   {"certificate", cls.certificate}};
  if (cls.kind == AngleKind::RationalPi) {
    j["p"] = cls.p;
    j["q"] = cls.q;
  }
  return j;
}

nlohmann::json report_document(const std::string& command) {
  return nlohmann::json{{"document", "report"},
                        {"tool", "sogen"},
                        {"version", tool_version},
                        {"command", command}};
}

nlohmann::json load_document_schemas(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open schema file '" + path + "'");
  try {
    nlohmann::json j;
    in >> j;
    return j;
  } catch (const std::exception& e) {
    throw ConfigError("schema file '" + path + "' is not valid JSON: " + e.what());
  }
}

std::optional<std::string> document_schema_violation(const nlohmann::json& doc,
                                                     const nlohmann::json& schemas) {
  if (!doc.is_object() || !doc.contains("document") || !doc["document"].is_string())
    return "$: document must be an object with a string 'document' field";
  const std::string type = doc["document"].get<std::string>();
  if (!schemas.is_object() || !schemas.contains("schemas") ||
      !schemas["schemas"].contains(type))
    return "$: no schema for document type '" + type + "'";
  return check_schema_node(doc, schemas["schemas"][type], "$");
}

EngineConfig load_engine_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open configuration file '" + path + "'");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    throw ConfigError("configuration file '" + path + "' is not valid JSON: " + e.what());
  }
  if (!j.is_object()) throw ConfigError("configuration root must be an object");

  EngineConfig cfg;
  for (auto it = j.begin(); it != j.end(); ++it) {
    const std::string& key = it.key();
    const nlohmann::json& val = it.value();
    auto number = [&](double* out) {
      if (!val.is_number()) throw ConfigError("configuration key '" + key + "' must be a number");
      *out = val.get<double>();
    };
    auto integer = [&](auto* out) {
      if (!val.is_number_integer())
        throw ConfigError("configuration key '" + key + "' must be an integer");
      *out = val.get<std::decay_t<decltype(*out)>>();
    };
    if (key == "rank_tol")
      number(&cfg.rank_tol);
    else if (key == "dedup_tol")
      number(&cfg.dedup_tol);
    else if (key == "angle_tol")
      number(&cfg.angle_tol);
    else if (key == "identity_tol")
      number(&cfg.identity_tol);
    else if (key == "q_max")
      integer(&cfg.q_max);
    else if (key == "substitution_depth")
      integer(&cfg.substitution_depth);
    else if (key == "word_budget")
      integer(&cfg.word_budget);
    else if (key == "geodetic_table_path") {
      if (!val.is_string())
        throw ConfigError("configuration key 'geodetic_table_path' must be a string");
      cfg.geodetic_table_path = val.get<std::string>();
    } else {
      throw ConfigError("unknown configuration key '" + key + "'");
    }
  }
  if (cfg.rank_tol <= 0 || cfg.dedup_tol <= 0 || cfg.angle_tol <= 0 || cfg.identity_tol <= 0)
    throw ConfigError("tolerances must be positive");
  if (cfg.q_max < 1 || cfg.word_budget < 1)
    throw ConfigError("caps must be at least 1");
  return cfg;
}

EngineConfig resolve_engine_config(const std::optional<std::string>& cli_path) {
  if (cli_path) return load_engine_config(*cli_path);
  if (const char* env = std::getenv("SOGEN_CONFIG"); env && *env)
    return load_engine_config(env);
  return EngineConfig{};
}

}  // namespace sogen
