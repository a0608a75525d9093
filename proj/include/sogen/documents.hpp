// Copyright (c) 2026 The sogen authors
// SPDX-License-Identifier: MIT

#pragma once

#include <Eigen/Dense>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "sogen/angle_class.hpp"
#include "sogen/engine.hpp"
#include "sogen/errors.hpp"
#include "sogen/exact.hpp"

namespace sogen {

inline constexpr const char* tool_version = "0.1.0";

/// A square matrix read from text: one row per line, entries separated by
/// whitespace or commas, '#' starts a comment. Entries are either all exact
/// scalars in the surd grammar (`p`, `p/q`, `(a + b*sqrt(c))`) or decimal
/// floats; mixing the two is an error. Whether the matrix must be a rotation
/// or a skew generator is the caller's contract, not the document's.
struct MatrixDocument {
  int modes = 0;
  std::string mode_tag;         // "exact" | "float"
  Eigen::MatrixXd values;
  std::vector<QuadSurd> exact;  // row-major; empty in float mode

  bool is_exact() const { return mode_tag == "exact"; }

  /// ParseError with 1-based line and column on malformed input.
  static MatrixDocument parse(const std::string& text);

  /// In exact mode, parse(print()) reproduces the document exactly.
  std::string print() const;
};

/// Angle literals: symbolic multiples of pi ("3pi/4", "0.4pi", "pi/2", the
/// pi glyph works too) become exact pi-fractions; anything else must be a
/// decimal radian value. ParseError on malformed input.
AngleSpec parse_angle_literal(const std::string& text);

nlohmann::json certificate_step_to_json(const CertStep& step);
CertStep certificate_step_from_json(const nlohmann::json& j);

/// The full verdict document: kind, reason, replayable certificate, tool
/// version, and the configuration the engine ran under.
nlohmann::json verdict_to_json(const UniversalityVerdict& verdict, const EngineConfig& cfg);
UniversalityVerdict verdict_from_json(const nlohmann::json& j);

nlohmann::json angle_class_to_json(const AngleClass& cls);

/// Envelope for report-style documents (orbit, closure, density, searches);
/// the command fills in its own payload fields.
nlohmann::json report_document(const std::string& command);

nlohmann::json engine_config_to_json(const EngineConfig& cfg);

/// Reads the schema collection shipped at data/document_schema.json.
/// ConfigError on I/O or JSON failure.
nlohmann::json load_document_schemas(const std::string& path);

/// Structural validation of a document against the schema matching its
/// "document" field. Returns the first violation ("path: problem"), or
/// nothing when the document conforms.
std::optional<std::string> document_schema_violation(const nlohmann::json& doc,
                                                     const nlohmann::json& schemas);

/// Loads engine settings from a JSON file; unknown keys and wrong types are
/// ConfigError so typos never silently fall back to defaults.
EngineConfig load_engine_config(const std::string& path);

/// Configuration precedence: explicit path beats the SOGEN_CONFIG
/// environment variable beats built-in defaults.
EngineConfig resolve_engine_config(const std::optional<std::string>& cli_path);

}  // namespace sogen
