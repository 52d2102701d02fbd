#include "mlab/lab.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <sstream>

#include "mlab/error.hpp"
#include "mlab/serialize.hpp"

namespace mlab {

using nlohmann::json;

namespace {

const char* type_name(const json& v) {
  if (v.is_null()) return "null";
  if (v.is_boolean()) return "boolean";
  if (v.is_number()) return "number";
  if (v.is_string()) return "string";
  if (v.is_array()) return "array";
  return "object";
}

bool type_matches(const json& expected, const json& got) {
  if (expected.is_null()) return true;  // free-form parameter, checked by the experiment
  if (expected.is_number()) return got.is_number();
  return std::string(type_name(expected)) == type_name(got);
}

ProbeConfig default_probe(const ExperimentDef& def) { return probe_config_from_json(def.probe_defaults); }

}  // namespace

ExperimentConfig config_from_json(const json& j) {
  require(j.is_object(), ErrorKind::Config, "config must be a JSON object");
  require(j.contains("experiment") && j.at("experiment").is_string(), ErrorKind::Config,
          "config needs a string 'experiment'");
  ExperimentConfig c;
  c.experiment = j.at("experiment").get<std::string>();
  const ExperimentDef& def = find_experiment(c.experiment);
  c.probe = default_probe(def);
  for (const auto& [key, v] : j.items()) {
    if (key == "experiment") continue;
    if (key == "params") {
      require(v.is_object(), ErrorKind::Config, "'params' must be an object");
      for (const auto& [pk, pv] : v.items()) {
        require(def.defaults.contains(pk), ErrorKind::Config,
                "unknown parameter '" + pk + "' for " + c.experiment);
        require(type_matches(def.defaults.at(pk), pv), ErrorKind::Config,
                "parameter '" + pk + "' must be of type " + type_name(def.defaults.at(pk)));
      }
      c.params = v;
    } else if (key == "probe") {
      c.probe = probe_config_from_json(v, c.probe);
    } else if (key == "grid") {
      require(def.uses_grid, ErrorKind::Config, c.experiment + " does not take a grid");
      c.grid = grid_from_json(v);
    } else if (key == "output") {
      require(v.is_object(), ErrorKind::Config, "'output' must be an object");
      for (const auto& [ok, ov] : v.items()) {
        require(ov.is_string(), ErrorKind::Config, "output paths must be strings");
        if (ok == "json")
          c.json_path = ov.get<std::string>();
        else if (ok == "csv")
          c.csv_path = ov.get<std::string>();
        else
          fail(ErrorKind::Config, "unknown output key '" + ok + "'");
      }
    } else {
      fail(ErrorKind::Config, "unknown config key '" + key + "'");
    }
  }
  return c;
}

json config_to_json(const ExperimentConfig& c) {
  json j = {{"experiment", c.experiment}, {"params", c.params}, {"probe", probe_config_to_json(c.probe)}};
  if (c.grid) j["grid"] = grid_to_json(*c.grid);
  json out = json::object();
  if (!c.json_path.empty()) out["json"] = c.json_path;
  if (!c.csv_path.empty()) out["csv"] = c.csv_path;
  if (!out.empty()) j["output"] = out;
  return j;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  require(static_cast<bool>(in), ErrorKind::Config, "cannot open config '" + path + "'");
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    fail(ErrorKind::Config, "config '" + path + "' is not valid JSON: " + e.what());
  }
  return config_from_json(j);
}

json resolved_params(const ExperimentConfig& c) {
  json p = find_experiment(c.experiment).defaults;
  for (const auto& [k, v] : c.params.items()) p[k] = v;
  return p;
}

json ExperimentReport::to_json() const {
  json v = json::array();
  for (const auto& x : verdicts) v.push_back(x.to_json());
  return {{"schema_version", kReportSchemaVersion},
          {"experiment", experiment},
          {"config", config},
          {"seed", seed},
          {"columns", columns},
          {"rows", rows},
          {"fits", fits},
          {"verdicts", v},
          {"pass", pass},
          {"runtime_seconds", runtime_seconds},
          {"notes", notes}};
}

std::string ExperimentReport::to_csv() const {
  std::ostringstream out;
  for (std::size_t i = 0; i < columns.size(); ++i) out << (i ? "," : "") << columns[i];
  out << '\n';
  for (const auto& r : rows) {
    for (std::size_t i = 0; i < columns.size(); ++i) {
      if (i) out << ',';
      if (!r.contains(columns[i])) continue;
      const json& v = r.at(columns[i]);
      if (v.is_string())
        out << v.get<std::string>();
      else if (!v.is_null())
        out << v.dump();
    }
    out << '\n';
  }
  return out.str();
}

ExperimentReport run(const ExperimentConfig& config) {
  const auto start = std::chrono::steady_clock::now();
  const ExperimentDef& def = find_experiment(config.experiment);
  ExperimentContext ctx;
  ctx.params = resolved_params(config);
  ctx.probe = config.probe;
  ctx.grid = config.grid;
  ctx.seed = config.probe.master_seed;
  if (ctx.grid) {
    try {
      ctx.grid->validate();
    } catch (const Error& e) {
      fail(ErrorKind::Config, e.what());
    }
  }

  ExperimentRows rows;
  try {
    rows = def.compute(ctx);
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorKind::Config, std::string("parameters of ") + def.name + ": " + e.what());
  }
  ExperimentReport rep;
  rep.experiment = def.name;
  rep.config = config_to_json(config);
  rep.config["params"] = ctx.params;
  rep.seed = ctx.seed;
  rep.columns = def.columns;
  rep.rows = std::move(rows.rows);
  rep.notes = std::move(rows.notes);
  require(!rep.rows.empty(), ErrorKind::Evaluation, def.name + " produced no rows");
  Evaluation ev = def.evaluate(ctx.params, rep.rows);
  rep.fits = std::move(ev.fits);
  rep.verdicts = std::move(ev.verdicts);
  rep.pass = !rep.verdicts.empty();
  for (const auto& v : rep.verdicts) rep.pass = rep.pass && v.pass;
  rep.runtime_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return rep;
}

Evaluation reevaluate(const json& report) {
  const auto& def = find_experiment(report.at("experiment").get<std::string>());
  return def.evaluate(report.at("config").at("params"), report.at("rows").get<std::vector<json>>());
}

json catalog_json() {
  json out = json::array();
  for (const auto& e : experiment_catalog()) {
    json params = json::object();
    for (const auto& [k, v] : e.defaults.items())
      params[k] = {{"type", v.is_null() ? "any" : type_name(v)}, {"default", v}, {"description", e.docs.value(k, "")}};
    out.push_back({{"name", e.name},
                   {"summary", e.summary},
                   {"params", params},
                   {"probe_defaults", probe_config_to_json(default_probe(e))},
                   {"uses_grid", e.uses_grid},
                   {"columns", e.columns},
                   {"column_docs", e.column_docs}});
  }
  return out;
}

}  // namespace mlab
