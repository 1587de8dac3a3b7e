#pragma once

#include "crn/equilibrium.hpp"
#include "crn/salt.hpp"

#include <json.hpp>

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace crn {

struct ParseError : std::runtime_error {
  int line;
  ParseError(int line_number, const std::string& message)
      : std::runtime_error("line " + std::to_string(line_number) + ": " + message),
        line(line_number) {}
};

struct NetworkDocument {
  MassActionSystem system;
  std::vector<std::string> warnings;
};

/// Parses the reaction DSL (one reaction per line, `A -> B, k=...` or
/// `A <-> B, kf=..., kr=...`) or, when the text starts with '{', the JSON
/// network format. Vertices are deduplicated by exact complex equality in
/// input order.
NetworkDocument parse_network(const std::string& text);
NetworkDocument parse_network_file(const std::string& path);

std::string serialize_network(const MassActionSystem& sys);
nlohmann::json network_to_json(const MassActionSystem& sys);
NetworkDocument network_from_json(const nlohmann::json& doc);

std::string format_complex(const MassActionSystem& sys, Index vertex);

struct AnalysisReport {
  int schema_version = 1;
  MassActionSystem system;
  std::vector<std::string> warnings;
  std::optional<StructuralReport> structural;
  std::optional<Decomposition> decomposition;
  std::optional<DecompositionChecks> checks;
  std::vector<ClassAnalysis> class_analyses;  // aligned with decomposition classes
  std::vector<TheoremVerdict> verdicts;
  std::optional<EquilibriumResult> equilibrium;
  std::vector<SaltCertificate> salt_certificates;
};

/// Structural + decomposition analysis of a parsed network.
AnalysisReport build_analysis_report(const NetworkDocument& doc);

nlohmann::json report_to_json(const AnalysisReport& report);
std::string report_to_text(const AnalysisReport& report);

}  // namespace crn
