#pragma once

// Experiment configs, orchestration and report emission (JSON and CSV).
//
// Config:  {"experiment": name, "params": {...}, "probe": {...},
//           "grid": {"d", "L", "N"}, "output": {"json": path, "csv": path}}
// Report:  {"schema_version", "experiment", "config", "seed", "columns",
//           "rows", "fits", "verdicts", "pass", "runtime_seconds", "notes"}

#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "mlab/experiments.hpp"

namespace mlab {

inline constexpr int kReportSchemaVersion = 1;

struct ExperimentConfig {
  std::string experiment;
  nlohmann::json params = nlohmann::json::object();
  ProbeConfig probe;
  std::optional<GridSpec> grid;
  std::string json_path;
  std::string csv_path;
};

/// Validates names, parameter types and probe/grid keys; throws Config.
ExperimentConfig config_from_json(const nlohmann::json& j);
nlohmann::json config_to_json(const ExperimentConfig& c);
ExperimentConfig load_config(const std::string& path);

/// The experiment's parameter defaults overlaid with the configured values.
nlohmann::json resolved_params(const ExperimentConfig& c);

struct ExperimentReport {
  std::string experiment;
  nlohmann::json config;
  std::uint64_t seed = 0;
  std::vector<std::string> columns;
  std::vector<nlohmann::json> rows;
  nlohmann::json fits;
  std::vector<Verdict> verdicts;
  bool pass = false;
  double runtime_seconds = 0.0;
  std::vector<std::string> notes;

  nlohmann::json to_json() const;
  std::string to_csv() const;
};

ExperimentReport run(const ExperimentConfig& config);

/// Recomputes fits and verdicts from a report's config echo and rows.
Evaluation reevaluate(const nlohmann::json& report);

/// Catalog entries with parameter schemas, for `mlab list`.
nlohmann::json catalog_json();

}  // namespace mlab
