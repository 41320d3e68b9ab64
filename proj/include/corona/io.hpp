#pragma once

#include <filesystem>
#include <string>

#include "json.hpp"

#include "corona/glue.hpp"

namespace corona {

using Json = nlohmann::ordered_json;

constexpr const char* kSolutionFormat = "corona-solution/1";

/// Problem description read by every pipeline command.
struct ProblemConfig {
  std::string name = "problem";
  ParamFamily family;
  SolverSettings solver;
  // Product of all rescale factors applied to the original data; g for the
  // original data is g for this data times `scale`.
  double scale = 1.0;
  std::string output_dir = ".";
};

Json family_to_json(const ParamFamily& family);
ParamFamily family_from_json(const Json& j);

Json settings_to_json(const SolverSettings& s);
SolverSettings settings_from_json(const Json& j);

Json cert_to_json(const NormCert& c);
NormCert cert_from_json(const Json& j);

Json config_to_json(const ProblemConfig& config);
ProblemConfig config_from_json(const Json& j);

/// A glued solution as persisted on disk, with the bookkeeping that travels
/// alongside it.
struct StoredSolution {
  std::string name;
  double scale = 1.0;
  GluedSolution solution;
};

Json solution_to_json(const GluedSolution& solution, const std::string& name, double scale);
StoredSolution solution_from_json(const Json& j);

// File helpers. Parse and schema errors raise ErrorKind::config with the
// offending line/column or field path.
Json read_json(const std::filesystem::path& path);
void write_json(const Json& j, const std::filesystem::path& path);
ProblemConfig load_config(const std::filesystem::path& path);
StoredSolution load_solution(const std::filesystem::path& path);

}  // namespace corona
