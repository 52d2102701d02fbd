#pragma once

// The named experiments. Each one is split into a row producer (the
// expensive part) and a verdict function that depends only on the parameters
// and the rows, so reports can be re-judged offline.

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "mlab/probes.hpp"
#include "mlab/signal.hpp"

namespace mlab {

struct Verdict {
  std::string name;
  bool pass = false;
  double measured = 0.0;
  double target = 0.0;
  double tolerance = 0.0;
  /// How measured, target and tolerance are compared, e.g. "|m - t| <= tol".
  std::string relation;

  nlohmann::json to_json() const;
};

struct ExperimentContext {
  /// Defaults merged with the configured parameters.
  nlohmann::json params;
  ProbeConfig probe;
  std::optional<GridSpec> grid;
  std::uint64_t seed = 0;
};

struct ExperimentRows {
  std::vector<nlohmann::json> rows;
  std::vector<std::string> notes;
};

struct Evaluation {
  nlohmann::json fits = nlohmann::json::object();
  std::vector<Verdict> verdicts;
};

struct ExperimentDef {
  std::string name;
  std::string summary;
  /// Parameter defaults; the configured params must match their JSON types.
  nlohmann::json defaults;
  /// Parameter name -> one-line description.
  nlohmann::json docs;
  /// Overrides of the ProbeConfig defaults for this experiment.
  nlohmann::json probe_defaults = nlohmann::json::object();
  std::vector<std::string> columns;
  /// Column name -> description.
  nlohmann::json column_docs;
  bool uses_grid = false;
  std::function<ExperimentRows(const ExperimentContext&)> compute;
  std::function<Evaluation(const nlohmann::json& params, const std::vector<nlohmann::json>& rows)> evaluate;
};

const std::vector<ExperimentDef>& experiment_catalog();
/// Throws Config for unknown names.
const ExperimentDef& find_experiment(const std::string& name);

/// Ratio |T f_n|_q / |f_n|_p for the band-exact witness and shift_symbol(alpha)
/// on a grid of half-width L with N = max(4096, next power of two >= 16 L n).
double witness_ratio(int n, double u, double alpha, double p, double q, double L, std::size_t dim);
std::size_t witness_grid_size(int n, double L);

}  // namespace mlab
