#include <doctest.h>

#include <sstream>

#include "mlab/error.hpp"
#include "mlab/lab.hpp"
#include "mlab/parallel.hpp"

using namespace mlab;
using nlohmann::json;
using doctest::Approx;

namespace {

ErrorKind kind_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an error");
  return ErrorKind::Structural;
}

std::size_t csv_lines(const std::string& csv) {
  std::istringstream in(csv);
  std::string line;
  std::size_t n = 0;
  while (std::getline(in, line)) ++n;
  return n;
}

// The verdict's pass flag must agree with its stated relation.
bool consistent(const Verdict& v) {
  if (v.relation == "|measured - target| <= tolerance") return std::abs(v.measured - v.target) <= v.tolerance;
  if (v.relation == "measured <= target") return v.measured <= v.target;
  if (v.relation == "measured >= target") return v.measured >= v.target;
  return false;
}

json strip_runtime(json j) {
  j.erase("runtime_seconds");
  return j;
}

}  // namespace

TEST_SUITE("lab") {

TEST_CASE("catalog lists every experiment") {
  const std::vector<std::string> names{"hls_scaling",    "fourier_sharpness", "gamma_sharpness",
                                       "transference_check", "converse_rbound", "schur_bound",
                                       "pitt_check",     "mihlin_report",     "torus_l2_exact"};
  for (const auto& n : names) CHECK_NOTHROW((void)find_experiment(n));
  CHECK(experiment_catalog().size() == names.size());
  const auto cat = catalog_json();
  CHECK(cat.size() == names.size());
  for (const auto& e : cat) {
    CHECK(e.contains("params"));
    CHECK(e.contains("columns"));
  }
}

TEST_CASE("config validation") {
  CHECK(kind_of([] { (void)config_from_json({{"experiment", "nope"}}); }) == ErrorKind::Config);
  CHECK(kind_of([] { (void)config_from_json(json::array()); }) == ErrorKind::Config);
  CHECK(kind_of([] { (void)config_from_json({{"experiment", "hls_scaling"}, {"bogus", 1}}); }) == ErrorKind::Config);
  CHECK(kind_of([] { (void)config_from_json({{"experiment", "hls_scaling"}, {"params", {{"zz", 1}}}}); }) ==
        ErrorKind::Config);
  CHECK(kind_of([] { (void)config_from_json({{"experiment", "hls_scaling"}, {"params", {{"s", "half"}}}}); }) ==
        ErrorKind::Config);
  CHECK(kind_of([] {
          (void)config_from_json({{"experiment", "torus_l2_exact"}, {"grid", {{"d", 1}, {"L", 4.0}, {"N", 64}}}});
        }) == ErrorKind::Config);
  CHECK(kind_of([] { (void)config_from_json({{"experiment", "hls_scaling"}, {"probe", {{"trials", -1}}}}); }) ==
        ErrorKind::Config);
  CHECK(kind_of([] { (void)load_config("/nonexistent/config.json"); }) == ErrorKind::Config);

  const auto c = config_from_json({{"experiment", "gamma_sharpness"},
                                   {"params", {{"alpha", 1.0}}},
                                   {"probe", {{"master_seed", 5}}},
                                   {"output", {{"json", "a.json"}, {"csv", "b.csv"}}}});
  CHECK(c.probe.master_seed == 5);
  CHECK(c.probe.trials == 2000);  // experiment default
  CHECK(c.json_path == "a.json");
  CHECK(resolved_params(c).at("alpha") == 1.0);
  CHECK(resolved_params(c).at("u") == 1.0);
  CHECK(config_from_json(config_to_json(c)).params == c.params);
}

TEST_CASE("torus_l2_exact with explicit coefficients") {
  const auto rep = run(config_from_json(
      {{"experiment", "torus_l2_exact"}, {"params", {{"coefficients", {0.3, -1.7, {0.0, 0.9}}}}}}));
  REQUIRE(rep.rows.size() == 1u);
  CHECK(rep.rows[0].at("measured").get<double>() == Approx(1.7).epsilon(1e-6));
  CHECK(rep.pass);
  const auto j = rep.to_json();
  CHECK(j.at("schema_version") == kReportSchemaVersion);
  CHECK(j.at("config").at("params").contains("random_sets"));
  CHECK(csv_lines(rep.to_csv()) == 1 + rep.rows.size());
}

TEST_CASE("HLS dilation invariance") {
  const auto rep = run(config_from_json({{"experiment", "hls_scaling"},
                                         {"params", {{"s", 0.5}, {"p", 4.0 / 3.0}, {"deltas", {0.0}}}}}));
  CHECK(rep.pass);
  CHECK(rep.rows.size() == 4u);
  double lo = 1e300, hi = 0.0;
  for (const auto& r : rep.rows) {
    lo = std::min(lo, r.at("ratio").get<double>());
    hi = std::max(hi, r.at("ratio").get<double>());
  }
  CHECK(hi / lo - 1 < 0.01);
}

TEST_CASE("reports are reproducible and re-judgeable") {
  const json cfg = {{"experiment", "torus_l2_exact"}, {"params", {{"random_sets", 4}, {"max_radius", 6}}},
                    {"probe", {{"master_seed", 3}}}};
  const unsigned saved = default_threads();
  set_default_threads(1);
  const auto a = run(config_from_json(cfg)).to_json();
  set_default_threads(3);
  const auto b = run(config_from_json(cfg)).to_json();
  set_default_threads(saved);
  CHECK(strip_runtime(a) == strip_runtime(b));

  json other = cfg;
  other["probe"]["master_seed"] = 4;
  CHECK(strip_runtime(run(config_from_json(other)).to_json()).at("rows") != strip_runtime(a).at("rows"));

  const auto ev = reevaluate(a);
  REQUIRE(ev.verdicts.size() == a.at("verdicts").size());
  for (std::size_t i = 0; i < ev.verdicts.size(); ++i) CHECK(ev.verdicts[i].to_json() == a.at("verdicts")[i]);
}

TEST_CASE("verdicts follow their tolerance") {
  json cfg = {{"experiment", "torus_l2_exact"}, {"params", {{"coefficients", {0.3, -1.7, 0.2}}, {"tolerance", 1e-6}}}};
  auto rep = run(config_from_json(cfg));
  CHECK(rep.pass);
  for (const auto& v : rep.verdicts) CHECK(v.pass == consistent(v));
  // Re-judging tampered rows must fail.
  auto j = rep.to_json();
  j["rows"][0]["abs_error"] = 0.2;
  const auto ev = reevaluate(j);
  bool any_fail = false;
  for (const auto& v : ev.verdicts) {
    CHECK(v.pass == consistent(v));
    any_fail = any_fail || !v.pass;
  }
  CHECK(any_fail);
}

TEST_CASE("schur_bound oracle rows") {
  const auto rep = run(config_from_json({{"experiment", "schur_bound"}, {"params", {{"ns", {4, 6, 8, 10}}}}}));
  CHECK(rep.pass);
  for (const auto& r : rep.rows)
    if (r.at("kind") != "stability") CHECK(r.at("measured").get<double>() == Approx(r.at("predicted").get<double>()).epsilon(1e-6));
}

TEST_CASE("mihlin_report with an explicit symbol") {
  const auto rep = run(config_from_json(
      {{"experiment", "mihlin_report"}, {"params", {{"symbol", {{"kind", "riesz"}, {"s", 0.25}}}, {"r", 4.0}}}}));
  CHECK(rep.pass);
  CHECK(rep.rows.size() == 27u);
}

TEST_CASE("experiment parameter errors are config errors") {
  CHECK(kind_of([] {
          (void)run(config_from_json({{"experiment", "gamma_sharpness"}, {"params", {{"u", 3.0}}}}));
        }) == ErrorKind::Config);
  CHECK(kind_of([] {
          (void)run(config_from_json({{"experiment", "fourier_sharpness"}, {"params", {{"ns", {8, 16}}}}}));
        }) == ErrorKind::Config);
}

}  // TEST_SUITE
