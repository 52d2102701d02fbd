// mlab: run, list and validate experiments.
//   exit 0 = all verdicts pass, 1 = some verdict fails, 2 = config error

#include <algorithm>
#include <fstream>
#include <iostream>
#include <thread>

#include <CLI11.hpp>

#include "mlab/error.hpp"
#include "mlab/lab.hpp"
#include "mlab/parallel.hpp"

namespace {

constexpr int kPass = 0, kFail = 1, kConfigError = 2;

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  mlab::require(static_cast<bool>(out), mlab::ErrorKind::Config, "cannot write '" + path + "'");
  out << text;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Vector-valued Fourier multiplier lab"};
  app.require_subcommand(1);

  auto* run = app.add_subcommand("run", "run an experiment");
  std::string experiment, config_path, out_path, csv_path;
  std::uint64_t seed = 0;
  unsigned threads = 0;
  run->add_option("experiment", experiment, "experiment name")->required();
  run->add_option("--config", config_path, "config JSON file");
  auto* seed_opt = run->add_option("--seed", seed, "master seed (overrides probe.master_seed)");
  run->add_option("--out", out_path, "report JSON path");
  run->add_option("--csv", csv_path, "rows CSV path");
  run->add_option("--threads", threads, "worker threads (default: all cores)")->check(CLI::PositiveNumber);

  auto* list = app.add_subcommand("list", "list experiments with parameter schemas");

  auto* validate = app.add_subcommand("validate", "check a config without running it");
  std::string validate_path;
  validate->add_option("--config", validate_path, "config JSON file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kPass : kConfigError;
  }

  try {
    if (*list) {
      std::cout << mlab::catalog_json().dump(2) << '\n';
      return kPass;
    }
    if (*validate) {
      const auto cfg = mlab::load_config(validate_path);
      std::cout << "ok: " << cfg.experiment << '\n';
      return kPass;
    }

    mlab::ExperimentConfig cfg;
    if (config_path.empty())
      cfg = mlab::config_from_json({{"experiment", experiment}});
    else
      cfg = mlab::load_config(config_path);
    if (cfg.experiment != experiment)
      mlab::fail(mlab::ErrorKind::Config,
                 "config is for '" + cfg.experiment + "' but '" + experiment + "' was requested");
    if (*seed_opt) cfg.probe.master_seed = seed;
    if (!out_path.empty()) cfg.json_path = out_path;
    if (!csv_path.empty()) cfg.csv_path = csv_path;
    // Reports do not depend on the thread count, so default to every core.
    mlab::set_default_threads(threads > 0 ? threads : std::max(1u, std::thread::hardware_concurrency()));

    const auto report = mlab::run(cfg);
    const std::string text = report.to_json().dump(2) + "\n";
    if (!cfg.json_path.empty())
      write_file(cfg.json_path, text);
    else
      std::cout << text;
    if (!cfg.csv_path.empty()) write_file(cfg.csv_path, report.to_csv());
    for (const auto& v : report.verdicts)
      std::cerr << (v.pass ? "PASS " : "FAIL ") << v.name << ": measured " << v.measured << ", target " << v.target
                << " (" << v.relation << ", tolerance " << v.tolerance << ")\n";
    return report.pass ? kPass : kFail;
  } catch (const mlab::Error& e) {
    std::cerr << "mlab: " << e.what() << '\n';
    return e.kind() == mlab::ErrorKind::Config ? kConfigError : kFail;
  } catch (const std::exception& e) {
    std::cerr << "mlab: " << e.what() << '\n';
    return kFail;
  }
}
