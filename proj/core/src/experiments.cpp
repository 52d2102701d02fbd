#include "mlab/experiments.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>

#include "mlab/error.hpp"
#include "mlab/fit.hpp"
#include "mlab/mihlin.hpp"
#include "mlab/multiplier.hpp"
#include "mlab/parallel.hpp"
#include "mlab/rng.hpp"
#include "mlab/schur.hpp"
#include "mlab/serialize.hpp"
#include "mlab/symbols.hpp"

namespace mlab {

using nlohmann::json;

json Verdict::to_json() const {
  return {{"name", name},           {"pass", pass},         {"measured", measured},
          {"target", target},       {"tolerance", tolerance}, {"relation", relation}};
}

namespace {

constexpr double kPi = std::numbers::pi;

double num(const json& p, const char* key) { return p.at(key).get<double>(); }
int integer(const json& p, const char* key) { return p.at(key).get<int>(); }
std::vector<double> nums(const json& p, const char* key) { return p.at(key).get<std::vector<double>>(); }
std::vector<int> ints(const json& p, const char* key) { return p.at(key).get<std::vector<int>>(); }

void config_check(bool ok, const std::string& what) { require(ok, ErrorKind::Config, what); }

double rget(const json& row, const char* key) { return row.at(key).get<double>(); }

Verdict near(std::string name, double measured, double target, double tol) {
  return {std::move(name), std::abs(measured - target) <= tol, measured, target, tol, "|measured - target| <= tolerance"};
}

Verdict at_most(std::string name, double measured, double bound) {
  return {std::move(name), measured <= bound, measured, bound, 0.0, "measured <= target"};
}

json fit_json(const SlopeFit& f) {
  return {{"slope", f.slope}, {"intercept", f.intercept}, {"residual", f.residual}, {"used", f.used}, {"notes", f.notes}};
}

SlopeFit fit_column(const std::vector<json>& rows, const char* x, const char* y, double log_power) {
  std::vector<SlopeRow> pts;
  for (const auto& r : rows) pts.push_back({rget(r, x), rget(r, y)});
  return fit_slope(pts, log_power);
}

ProbeConfig child_probe(const ProbeConfig& base, std::uint64_t task) {
  ProbeConfig c = base;
  c.master_seed = child_seed(base.master_seed, task);
  return c;
}

std::vector<json> collect(std::vector<std::vector<json>>& parts) {
  std::vector<json> out;
  for (auto& p : parts)
    for (auto& r : p) out.push_back(std::move(r));
  return out;
}

// ---------------------------------------------------------------------------
// torus_l2_exact

ExperimentRows torus_l2_compute(const ExperimentContext& ctx) {
  const json& P = ctx.params;
  std::vector<std::vector<cplx>> sets;
  if (!P.at("coefficients").is_null()) {
    std::vector<cplx> v;
    try {
      v = complex_array_from_json(P.at("coefficients"));
    } catch (const Error& e) {
      fail(ErrorKind::Config, e.what());
    }
    config_check(v.size() % 2 == 1, "coefficients must have odd length 2n+1 (modes -n..n)");
    sets.push_back(std::move(v));
  } else {
    const int count = integer(P, "random_sets"), max_radius = integer(P, "max_radius");
    config_check(count > 0 && max_radius > 0, "random_sets and max_radius must be positive");
    for (int i = 0; i < count; ++i) {
      Rng rng(child_seed(ctx.seed, 1000 + static_cast<std::uint64_t>(i)));
      const int n = 1 + static_cast<int>(rng.index(static_cast<std::uint64_t>(max_radius)));
      std::vector<cplx> v(static_cast<std::size_t>(2 * n + 1));
      for (auto& x : v) x = rng.complex_gaussian();
      sets.push_back(std::move(v));
    }
  }
  ExperimentRows out;
  out.rows.resize(sets.size());
  parallel_for(sets.size(), [&](std::size_t i) {
    const auto T = TorusMultiplier::scalar(1, sets[i]);
    const auto res = norm_search(T, 2.0, 2.0, child_probe(ctx.probe, i));
    double predicted = 0.0;
    for (const cplx& z : sets[i]) predicted = std::max(predicted, std::abs(z));
    out.rows[i] = {{"instance", i},
                   {"n", T.n()},
                   {"measured", res.summary.lower_bound},
                   {"predicted", predicted},
                   {"abs_error", std::abs(res.summary.lower_bound - predicted)},
                   {"converged", res.summary.converged}};
  });
  return out;
}

Evaluation torus_l2_evaluate(const json& P, const std::vector<json>& rows) {
  Evaluation ev;
  double worst = 0.0;
  for (const auto& r : rows) worst = std::max(worst, rget(r, "abs_error"));
  ev.fits["max_abs_error"] = worst;
  ev.verdicts.push_back(at_most("parseval_max_abs_error", worst, num(P, "tolerance")));
  return ev;
}

// ---------------------------------------------------------------------------
// hls_scaling

double hls_q(double p, double s, double delta) {
  const double inv_q = 1.0 / p - s - delta;
  config_check(inv_q > 0.0 && inv_q < 1.0, "exponent relation gives q outside (1, inf)");
  return 1.0 / inv_q;
}

ExperimentRows hls_compute(const ExperimentContext& ctx) {
  const json& P = ctx.params;
  const double s = num(P, "s"), p = num(P, "p");
  config_check(s > 0.0 && s < 1.0, "s must lie in (0, 1)");
  config_check(p > 1.0, "p must exceed 1");
  const GridSpec g = ctx.grid.value_or(GridSpec{1, 64.0, 65536});
  config_check(g.d == 1, "hls_scaling runs on the line (grid d = 1)");
  const auto deltas = nums(P, "deltas"), lambdas = nums(P, "lambdas");
  config_check(!deltas.empty() && lambdas.size() >= 4, "need deltas and at least 4 lambdas");
  for (double l : lambdas) config_check(l > 0.0, "lambdas must be positive");
  for (double d : deltas) hls_q(p, s, d);

  const LineMultiplier T{riesz_symbol(s), g};
  ExperimentRows out;
  out.rows.resize(deltas.size() * lambdas.size());
  parallel_for(out.rows.size(), [&](std::size_t i) {
    const double delta = deltas[i / lambdas.size()], lambda = lambdas[i % lambdas.size()];
    const double q = hls_q(p, s, delta);
    // Mean-zero test function t e^{-pi t^2}, dilated.
    GridFunction f(g, VectorModel::scalar());
    auto col = f.mutable_component(0);
    for (std::size_t k = 0; k < g.N; ++k) {
      const double t = lambda * g.coord(k);
      col[k] = t * std::exp(-kPi * t * t);
    }
    out.rows[i] = {{"delta", delta}, {"q", q}, {"lambda", lambda}, {"ratio", ratio(T, f, p, q)}};
  });
  out.notes.push_back("test function t exp(-pi t^2) has vanishing mean, so the Riesz potential decays integrably");
  return out;
}

Evaluation hls_evaluate(const json& P, const std::vector<json>& rows) {
  Evaluation ev;
  std::vector<double> deltas;
  for (const auto& r : rows)
    if (std::find(deltas.begin(), deltas.end(), rget(r, "delta")) == deltas.end()) deltas.push_back(rget(r, "delta"));
  for (double delta : deltas) {
    std::vector<json> group;
    for (const auto& r : rows)
      if (rget(r, "delta") == delta) group.push_back(r);
    std::sort(group.begin(), group.end(), [](const json& a, const json& b) { return rget(a, "lambda") < rget(b, "lambda"); });
    const std::string key = "delta=" + json(delta).dump();
    if (delta == 0.0) {
      double lo = kInf, hi = 0.0;
      for (const auto& r : group) {
        lo = std::min(lo, rget(r, "ratio"));
        hi = std::max(hi, rget(r, "ratio"));
      }
      const double spread = (hi - lo) / hi;
      ev.fits[key] = {{"spread", spread}};
      ev.verdicts.push_back(at_most("dilation_spread " + key, spread, num(P, "spread_tol")));
    } else {
      const auto fit = fit_column(group, "lambda", "ratio", 0.0);
      ev.fits[key] = fit_json(fit);
      ev.verdicts.push_back(near("drift_slope " + key, fit.slope, delta, num(P, "slope_tol")));
    }
  }
  return ev;
}

// ---------------------------------------------------------------------------
// fourier_sharpness

ExperimentRows fourier_compute(const ExperimentContext& ctx) {
  const json& P = ctx.params;
  const double u = num(P, "u"), p = num(P, "p"), q = num(P, "q"), L = num(P, "L");
  config_check(u >= 1.0 && p > 1.0 && q > p, "need u >= 1 and 1 < p < q");
  const auto ns = ints(P, "ns");
  config_check(ns.size() >= 4 && std::is_sorted(ns.begin(), ns.end()) && ns.front() >= 2, "need >= 4 increasing ns >= 2");
  const double alpha = 1.0 / p - 1.0 / q;
  const std::size_t dim = static_cast<std::size_t>(2 * ns.back() + 1);
  ExperimentRows out;
  out.rows.resize(ns.size());
  parallel_for(ns.size(), [&](std::size_t i) {
    const int n = ns[i];
    out.rows[i] = {{"n", n}, {"ratio", witness_ratio(n, u, alpha, p, q, L, dim)}, {"grid_N", witness_grid_size(n, L)}};
  });
  out.notes.push_back("band-exact witness: its transform is exactly the indicator of (n, 2n] on the dual grid");
  return out;
}

Evaluation fourier_evaluate(const json& P, const std::vector<json>& rows) {
  Evaluation ev;
  const double u = num(P, "u"), p = num(P, "p"), q = num(P, "q");
  const double predicted = (1.0 / u - (1.0 / p - 1.0 / q)) - (1.0 - 1.0 / p);
  const auto fit = fit_column(rows, "n", "ratio", num(P, "log_power"));
  ev.fits["witness_ratio"] = fit_json(fit);
  ev.fits["predicted_slope"] = predicted;
  ev.verdicts.push_back(near("witness_slope", fit.slope, predicted, num(P, "slope_tol")));
  return ev;
}

// ---------------------------------------------------------------------------
// gamma_sharpness

ExperimentRows gamma_compute(const ExperimentContext& ctx) {
  const json& P = ctx.params;
  const double u = num(P, "u"), p = num(P, "p"), q = num(P, "q"), alpha = num(P, "alpha"), L = num(P, "L");
  config_check(u >= 1.0 && u <= 2.0, "gamma_sharpness covers u in [1, 2]");
  config_check(p >= 1.0 && p <= 2.0 && q >= 2.0 && q > p, "need p in [1, 2], q in [2, inf), p < q");
  config_check(alpha >= 0.0, "alpha must be >= 0");
  const auto ns = ints(P, "ns");
  config_check(ns.size() >= 4 && std::is_sorted(ns.begin(), ns.end()) && ns.front() >= 2, "need >= 4 increasing ns >= 2");
  const double inv_r = 1.0 / p - 1.0 / q;
  const std::size_t wdim = static_cast<std::size_t>(2 * ns.back() + 1);
  ExperimentRows out;
  out.rows.resize(ns.size());
  parallel_for(ns.size(), [&](std::size_t i) {
    const int n = ns[i];
    const auto m = shift_symbol(alpha, n, static_cast<std::size_t>(n + 1), u);
    std::vector<Xi> xi;
    for (int k = 1; k <= n; ++k) xi.push_back({k - 0.5, 0.0});
    const auto F = weighted_symbol_family(*m, inv_r, xi);
    // Seed: every member acting on e_0.
    FamilyTuple seed;
    for (int k = 0; k < n; ++k) {
      seed.members.push_back(static_cast<std::size_t>(k));
      seed.vectors.push_back(Eigen::VectorXcd::Unit(n + 1, 0));
    }
    const auto est = gamma_bound_estimate(F, child_probe(ctx.probe, static_cast<std::uint64_t>(n)), {seed});
    out.rows[i] = {{"n", n},
                   {"gamma_estimate", est.lower_bound},
                   {"stderr", est.std_error},
                   {"singleton_max", est.singleton_max},
                   {"structured_ratio", est.seed_values.front()},
                   {"structured_ascended", est.restart_best.front()},
                   {"witness_ratio", witness_ratio(n, u, alpha, p, q, L, wdim)}};
  });
  return out;
}

Evaluation gamma_evaluate(const json& P, const std::vector<json>& rows) {
  Evaluation ev;
  const double u = num(P, "u"), p = num(P, "p"), q = num(P, "q"), alpha = num(P, "alpha");
  const double tol = num(P, "slope_tol"), lp = num(P, "log_power");
  const double threshold = 1.0 / p - 1.0 / q + std::abs(1.0 / u - 0.5);
  const bool growing = alpha < threshold;
  const auto raw = fit_column(rows, "n", "gamma_estimate", 0.0);
  // The overall estimate sits on the singleton floor at desk-scale n; the
  // growth shows in the structured tuple.
  const auto corrected = fit_column(rows, "n", "structured_ratio", lp);
  const auto witness = fit_column(rows, "n", "witness_ratio", lp);
  ev.fits["threshold"] = threshold;
  ev.fits["regime"] = growing ? "growing" : "bounded";
  ev.fits["gamma_raw"] = fit_json(raw);
  ev.fits["structured_corrected"] = fit_json(corrected);
  ev.fits["witness"] = fit_json(witness);
  if (growing)
    ev.verdicts.push_back(near("gamma_growth_slope", corrected.slope, threshold - alpha, tol));
  else
    ev.verdicts.push_back(at_most("gamma_bounded_slope", raw.slope, tol));
  ev.verdicts.push_back(near("witness_slope", witness.slope, 1.0 / u + 1.0 / p - 1.0 - alpha, tol));
  return ev;
}

// ---------------------------------------------------------------------------
// transference_check

Eigen::MatrixXcd random_matrix(Rng& rng, std::size_t dim) {
  const auto n = static_cast<Eigen::Index>(dim);
  Eigen::MatrixXcd m(n, n);
  for (Eigen::Index j = 0; j < n; ++j)
    for (Eigen::Index i = 0; i < n; ++i) m(i, j) = rng.complex_gaussian();
  return m / std::sqrt(static_cast<double>(dim));
}

struct CubeInstance {
  double a = 1.0;
  SymbolPtr symbol;
  TorusMultiplier torus;
};

CubeInstance random_cube_instance(Rng& rng, double a, int radius, const VectorModel& model) {
  std::map<MultiIndex, OperatorMatrix> coeffs;
  SymbolCoefficients c;
  c.d = 1;
  c.n = radius;
  c.a = a;
  for (int k = -radius; k <= radius; ++k) {
    OperatorMatrix t(model, model, random_matrix(rng, model.dim()));
    coeffs.emplace(MultiIndex{k, 0}, t);
    c.m.push_back(t);
  }
  return {a, cube_step_symbol(a, 1, std::move(coeffs)), TorusMultiplier(std::move(c))};
}

TrigPolynomial random_polynomial(Rng& rng, int radius, const VectorModel& model) {
  TrigPolynomial f(1, radius, model);
  for (Eigen::Index j = 0; j < f.coeffs().cols(); ++j)
    for (Eigen::Index i = 0; i < f.coeffs().rows(); ++i) f.coeffs()(i, j) = rng.complex_gaussian();
  return f;
}

// Line functions transferred from a torus polynomial: the band-exact one has
// transform a^{-1/p'} x_k on [ak, a(k+1)); the windowed one is
// P(at) e^{pi i a t} w(at) with a Gaussian window w.
GridFunction transferred_band(const TrigPolynomial& P, double a, double p, const GridSpec& g) {
  const GridSpec dg = g.dual();
  GridFunction fh(dg, P.model());
  const double scale = std::pow(a, -(1.0 - 1.0 / p));
  for (std::size_t c = 0; c < P.model().dim(); ++c) {
    auto col = fh.mutable_component(c);
    for (std::size_t j = 0; j < dg.N; ++j) {
      const double xi = dg.coord(j);
      const int k = static_cast<int>(std::floor(xi / a));
      if (std::abs(k) > P.n()) continue;
      col[j] = scale * P.coeff(P.mode_index({k, 0}))(static_cast<Eigen::Index>(c));
    }
  }
  return fourier_inverse(fh);
}

GridFunction transferred_window(const TrigPolynomial& P, double a, const GridSpec& g) {
  GridFunction f(g, P.model());
  std::vector<std::span<cplx>> cols;
  for (std::size_t c = 0; c < P.model().dim(); ++c) cols.push_back(f.mutable_component(c));
  for (std::size_t i = 0; i < g.N; ++i) {
    const double s = a * g.coord(i);
    const double w = std::exp(-kPi * s * s / 16.0);
    if (w < 1e-300) continue;
    const Vector v = P.eval({s - std::floor(s), 0.0});
    const cplx phase = std::polar(w, kPi * s);
    for (std::size_t c = 0; c < cols.size(); ++c) cols[c][i] = phase * v.entries()(static_cast<Eigen::Index>(c));
  }
  return f;
}

double transference_constant(double p, double q) {
  const double qq = dual_exponent(q);
  return std::pow(periodization_sup(p, 1), 1.0 / p) * std::pow(periodization_sup(qq, 1), 1.0 / qq);
}

ExperimentRows transference_compute(const ExperimentContext& ctx) {
  const json& P = ctx.params;
  const int symbols = integer(P, "symbols"), polys = integer(P, "polynomials"), radius = integer(P, "radius");
  const double u = num(P, "u"), p = num(P, "p"), q = num(P, "q"), infl = num(P, "inflation");
  const auto avals = nums(P, "a_values");
  config_check(symbols > 0 && polys > 0 && radius >= 0 && !avals.empty(), "counts must be positive");
  config_check(p > 1.0 && q >= p && !is_infinite(q), "need 1 < p <= q < inf");
  for (double a : avals) config_check(a > 0.0, "a_values must be positive");
  const GridSpec g = ctx.grid.value_or(GridSpec{1, 32.0, 4096});
  config_check(g.d == 1, "transference_check runs in d = 1");
  const VectorModel model = VectorModel::sequence(u, static_cast<std::size_t>(integer(P, "dim")));
  const double inv_r = 1.0 / p - 1.0 / q;
  const double CH = transference_constant(p, q);

  std::vector<std::vector<json>> parts(static_cast<std::size_t>(symbols));
  parallel_for(parts.size(), [&](std::size_t s) {
    Rng rng(child_seed(ctx.seed, 5000 + s));
    const double a = avals[s % avals.size()];
    config_check(a * radius + a < g.dual().L, "cubes exceed the dual grid; enlarge N or shrink a");
    const auto inst = random_cube_instance(rng, a, radius, model);
    std::vector<TrigPolynomial> polys_s;
    for (int i = 0; i < polys; ++i) polys_s.push_back(random_polynomial(rng, radius, model));
    std::vector<GridFunction> seeds;
    for (const auto& P_i : polys_s) {
      seeds.push_back(transferred_band(P_i, a, p, g));
      seeds.push_back(transferred_window(P_i, a, g));
    }
    const LineMultiplier line{inst.symbol, g};
    const auto res = norm_search(line, p, q, child_probe(ctx.probe, s), seeds);
    const double lb = res.summary.lower_bound;
    for (int i = 0; i < polys; ++i) {
      const double tr = ratio(inst.torus, polys_s[static_cast<std::size_t>(i)], p, q);
      const double lhs = std::pow(a, inv_r) * tr;
      const double rhs = CH * infl * lb;
      parts[s].push_back({{"symbol", s},
                          {"a", a},
                          {"polynomial", i},
                          {"torus_ratio", tr},
                          {"lhs", lhs},
                          {"line_lower_bound", lb},
                          {"C_H", CH},
                          {"rhs", rhs},
                          {"converged", res.summary.converged},
                          {"holds", lhs <= rhs}});
    }
  });
  ExperimentRows out;
  out.rows = collect(parts);
  out.notes.push_back("line norm searches are seeded with band-exact and windowed transfers of every polynomial");
  return out;
}

Evaluation transference_evaluate(const json& P, const std::vector<json>& rows) {
  Evaluation ev;
  long checked = 0, violated = 0, flagged = 0;
  double worst = 0.0;
  for (const auto& r : rows) {
    if (!r.at("converged").get<bool>()) {
      ++flagged;
      continue;
    }
    ++checked;
    worst = std::max(worst, rget(r, "lhs") / rget(r, "rhs"));
    if (!(rget(r, "lhs") <= rget(r, "rhs"))) ++violated;
  }
  ev.fits["checked"] = checked;
  ev.fits["flagged_unconverged"] = flagged;
  ev.fits["worst_lhs_over_rhs"] = worst;
  ev.verdicts.push_back(at_most("transference_violations", static_cast<double>(violated), 0.0));
  ev.verdicts.push_back(
      {"converged_instances", checked > 0, static_cast<double>(checked), 1.0, 0.0, "measured >= target"});
  const double t0 = 0.0;
  const double H2 = periodization_H(2.0, 1, std::span<const double>(&t0, 1)).values.at(0);
  ev.fits["H_2_at_0"] = H2;
  ev.verdicts.push_back(near("periodization_H_p2", H2, 1.0, num(P, "H_tolerance")));
  return ev;
}

// ---------------------------------------------------------------------------
// converse_rbound

ExperimentRows converse_compute(const ExperimentContext& ctx) {
  const json& P = ctx.params;
  const int count = integer(P, "instances"), radius = integer(P, "radius");
  const auto avals = nums(P, "a_values");
  config_check(count > 0 && radius >= 0 && !avals.empty(), "counts must be positive");
  const VectorModel model = VectorModel::hilbert(static_cast<std::size_t>(integer(P, "dim")));
  ExperimentRows out;
  out.rows.resize(static_cast<std::size_t>(count));
  parallel_for(out.rows.size(), [&](std::size_t i) {
    Rng rng(child_seed(ctx.seed, 7000 + i));
    const double a = avals[i % avals.size()];
    const auto inst = random_cube_instance(rng, a, radius, model);
    OperatorFamily F;
    double oracle = 0.0;
    for (const auto& t : inst.torus.coeffs().m) {
      F.members.push_back(t);
      oracle = std::max(oracle, operator_norm(t).value);  // |T_m|_{L^2 -> L^2} = sup_k |m_k| (Plancherel)
    }
    const auto est = rademacher_bound_estimate(F, child_probe(ctx.probe, i));
    // p = q = 2: r = inf, a^{-d/r} = 1 and the periodization constant is H_2 = 1.
    const double bound = oracle * num(P, "inflation");
    out.rows[i] = {{"instance", i},     {"a", a},          {"rademacher", est.lower_bound}, {"stderr", est.std_error},
                   {"oracle_norm", oracle}, {"bound", bound}, {"holds", est.lower_bound <= bound}};
  });
  return out;
}

Evaluation converse_evaluate(const json&, const std::vector<json>& rows) {
  Evaluation ev;
  long violated = 0;
  double worst = 0.0;
  for (const auto& r : rows) {
    worst = std::max(worst, rget(r, "rademacher") / rget(r, "oracle_norm"));
    if (!(rget(r, "rademacher") <= rget(r, "bound"))) ++violated;
  }
  ev.fits["worst_estimate_over_oracle"] = worst;
  ev.verdicts.push_back(at_most("rbound_violations", static_cast<double>(violated), 0.0));
  return ev;
}

// ---------------------------------------------------------------------------
// schur_bound

SchurData decay_multiplier(int n, double inv_r) {
  SchurData d;
  d.r = 1.0 / inv_r;
  for (int j = -(n - 1); j <= n - 1; ++j) d.m[j] = 1.0 / (1.0 + std::pow(std::abs(j), inv_r));
  return d;
}

ExperimentRows schur_compute(const ExperimentContext& ctx) {
  const json& P = ctx.params;
  const double a = num(P, "a"), inv_r = num(P, "inv_r");
  config_check(a > 1.0 && inv_r > 0.0 && inv_r <= 1.0, "need a > 1 and 1/r in (0, 1]");
  const auto ns = ints(P, "ns"), ons = ints(P, "oracle_ns");
  config_check(ns.size() >= 4 && std::is_sorted(ns.begin(), ns.end()), "need >= 4 increasing ns");
  const bool boundary = P.at("boundary").get<bool>();

  struct Task {
    std::string kind;
    int n;
  };
  std::vector<Task> tasks;
  for (int n : ns) tasks.push_back({"stability", n});
  for (int n : ons) {
    tasks.push_back({"oracle_a2", n});
    tasks.push_back({"pinching", n});
  }
  if (boundary)
    for (int n : ns) tasks.push_back({"boundary", n});

  ExperimentRows out;
  out.rows.resize(tasks.size());
  parallel_for(tasks.size(), [&](std::size_t i) {
    const Task& t = tasks[i];
    const auto probe = child_probe(ctx.probe, 9000 + i);
    json row = {{"kind", t.kind}, {"n", t.n}};
    if (t.kind == "stability" || t.kind == "boundary") {
      // Boundary case 1/r = |1/a - 1/2| is open; those rows carry no verdict.
      const double ir = t.kind == "stability" ? inv_r : std::abs(1.0 / a - 0.5);
      const auto data = decay_multiplier(t.n, ir);
      const auto res = schur_norm_search(data, SpectralResolution::singletons(static_cast<std::size_t>(t.n)), a, probe);
      row.update({{"a", a}, {"inv_r", ir}, {"measured", res.summary.lower_bound}, {"predicted", 0.0},
                  {"cm", cm_constant(data.m, data.r)}});
    } else {
      Rng rng(child_seed(ctx.seed, 9000 + i));
      // Random blocks of size 1 or 2 with random labels and a random integer map f.
      SpectralResolution e;
      e.n = static_cast<std::size_t>(t.n);
      std::size_t idx = 0;
      int label = 0;
      while (idx < e.n) {
        const std::size_t size = std::min<std::size_t>(e.n - idx, 1 + rng.index(2));
        SpectralBlock b{label++, {}};
        for (std::size_t k = 0; k < size; ++k) b.indices.push_back(idx++);
        e.blocks.push_back(std::move(b));
      }
      SchurData data;
      data.r = 2.0;
      if (t.kind == "pinching") {
        data.m[0] = 1.0;
      } else {
        for (const auto& b : e.blocks) data.f[b.label] = static_cast<int>(rng.index(7)) - 3;
        for (int j = -6; j <= 6; ++j) data.m[j] = rng.complex_gaussian();
      }
      const double predicted = schur_symbol_matrix(data, e).cwiseAbs().maxCoeff();
      const auto res = schur_norm_search(data, e, 2.0, probe);
      row.update({{"a", 2.0}, {"inv_r", 0.0}, {"measured", res.summary.lower_bound}, {"predicted", predicted},
                  {"cm", cm_constant(data.m, 2.0)}});
    }
    out.rows[i] = std::move(row);
  });
  if (boundary) out.notes.push_back("boundary rows (1/r = |1/a - 1/2|) are exploratory; the question is open");
  return out;
}

Evaluation schur_evaluate(const json& P, const std::vector<json>& rows) {
  Evaluation ev;
  std::vector<json> stab;
  double worst = 0.0;
  for (const auto& r : rows) {
    const auto kind = r.at("kind").get<std::string>();
    if (kind == "stability") stab.push_back(r);
    if (kind == "oracle_a2" || kind == "pinching") worst = std::max(worst, std::abs(rget(r, "measured") - rget(r, "predicted")));
  }
  const auto fit = fit_column(stab, "n", "measured", 0.0);
  ev.fits["stability"] = fit_json(fit);
  ev.fits["oracle_max_abs_error"] = worst;
  ev.verdicts.push_back(at_most("oracle_max_abs_error", worst, num(P, "tolerance")));
  ev.verdicts.push_back({"stability_slope", fit.slope >= num(P, "slope_min") && fit.slope <= num(P, "slope_max"),
                         fit.slope, 0.0, num(P, "slope_max"), "slope_min <= measured <= slope_max"});
  return ev;
}

// ---------------------------------------------------------------------------
// pitt_check

struct Bump {
  cplx c;
  double t0, w, nu;
};

// Exact integral of |x|^gamma over [lo, hi].
double power_cell(double lo, double hi, double gamma) {
  auto F = [gamma](double x) { return std::copysign(std::pow(std::abs(x), gamma + 1.0) / (gamma + 1.0), x); };
  return F(hi) - F(lo);
}

std::vector<double> cell_weights(double half, std::size_t N, double gamma) {
  std::vector<double> w(N);
  const double h = 2.0 * half / static_cast<double>(N);
  for (std::size_t i = 0; i < N; ++i) {
    const double lo = -half + static_cast<double>(i) * h;
    w[i] = gamma == 0.0 ? h : power_cell(lo, lo + h, gamma);
  }
  return w;
}

double weighted_norm(const std::vector<double>& absval, const std::vector<double>& w, double p) {
  double acc = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i) acc += std::pow(absval[i], p) * w[i];
  return std::pow(acc, 1.0 / p);
}

ExperimentRows pitt_compute(const ExperimentContext& ctx) {
  const json& P = ctx.params;
  const auto tuples = P.at("tuples").get<std::vector<std::vector<double>>>();
  const int count = integer(P, "functions");
  const auto lambdas = nums(P, "lambdas");
  const double S = num(P, "space_half_width"), W = num(P, "frequency_half_width");
  const auto N = static_cast<std::size_t>(integer(P, "points"));
  config_check(count > 0 && lambdas.size() >= 2 && N >= 16 && S > 0 && W > 0, "invalid pitt_check sizes");
  std::vector<std::array<double, 4>> T{{2.0, 2.0, 0.0, 0.0}};
  for (const auto& t : tuples) {
    config_check(t.size() == 4, "tuples are [p, q, alpha, beta]");
    const double p = t[0], q = t[1], al = t[2], be = t[3];
    config_check(p >= 1.0 && q >= 1.0, "tuple exponents must be >= 1");
    config_check(std::abs(1.0 / p + 1.0 / q + be - al - 1.0) < 1e-9, "tuple violates d/p + d/q + beta - alpha = d");
    config_check(be * p > -1.0 && -al * q > -1.0, "weights must be locally integrable");
    T.push_back({p, q, al, be});
  }
  std::vector<std::vector<double>> ws(T.size()), wf(T.size());
  for (std::size_t k = 0; k < T.size(); ++k) {
    ws[k] = cell_weights(S, N, T[k][3] * T[k][0]);
    wf[k] = cell_weights(W, N, -T[k][2] * T[k][1]);
  }
  const double hs = 2.0 * S / static_cast<double>(N), hf = 2.0 * W / static_cast<double>(N);

  std::vector<std::vector<json>> parts(static_cast<std::size_t>(count));
  parallel_for(parts.size(), [&](std::size_t fi) {
    Rng rng(child_seed(ctx.seed, 11000 + fi));
    std::vector<Bump> bumps(3);
    for (auto& b : bumps) b = {rng.complex_gaussian(), rng.uniform(-2, 2), rng.uniform(0.5, 1.5), rng.uniform(-2, 2)};
    // ratio[tuple][lambda]
    std::vector<std::vector<double>> r(T.size(), std::vector<double>(lambdas.size()));
    std::vector<double> fs(N), fh(N);
    for (std::size_t li = 0; li < lambdas.size(); ++li) {
      const double lam = lambdas[li];
      for (std::size_t i = 0; i < N; ++i) {
        const double s = lam * (-S + (static_cast<double>(i) + 0.5) * hs);
        const double xi = (-W + (static_cast<double>(i) + 0.5) * hf) / lam;
        cplx a{}, b{};
        for (const auto& B : bumps) {
          a += B.c * std::exp(-kPi * (s - B.t0) * (s - B.t0) / (B.w * B.w)) * std::polar(1.0, 2 * kPi * B.nu * s);
          b += B.c * B.w * std::exp(-kPi * B.w * B.w * (xi - B.nu) * (xi - B.nu)) *
               std::polar(1.0, -2 * kPi * (xi - B.nu) * B.t0);
        }
        fs[i] = std::abs(a);
        fh[i] = std::abs(b) / lam;
      }
      for (std::size_t k = 0; k < T.size(); ++k)
        r[k][li] = weighted_norm(fh, wf[k], T[k][1]) / weighted_norm(fs, ws[k], T[k][0]);
    }
    for (std::size_t k = 0; k < T.size(); ++k) {
      const double lo = *std::min_element(r[k].begin(), r[k].end());
      const double hi = *std::max_element(r[k].begin(), r[k].end());
      double dev = 0.0;
      for (double v : r[k]) dev = std::max(dev, std::abs(v - 1.0));
      parts[fi].push_back({{"tuple", k},
                           {"p", T[k][0]},
                           {"q", T[k][1]},
                           {"alpha", T[k][2]},
                           {"beta", T[k][3]},
                           {"function", fi},
                           {"ratio_min", lo},
                           {"ratio_max", hi},
                           {"spread", hi / lo},
                           {"max_dev_from_one", dev}});
    }
  });
  ExperimentRows out;
  out.rows = collect(parts);
  out.notes.push_back("tuple 0 is the Plancherel case alpha = beta = 0, p = q = 2");
  return out;
}

Evaluation pitt_evaluate(const json& P, const std::vector<json>& rows) {
  Evaluation ev;
  double dev = 0.0;
  std::map<long, double> spread, rmax;
  for (const auto& r : rows) {
    const long k = r.at("tuple").get<long>();
    if (k == 0) dev = std::max(dev, rget(r, "max_dev_from_one"));
    spread[k] = std::max(spread[k], rget(r, "spread"));
    rmax[k] = std::max(rmax[k], rget(r, "ratio_max"));
  }
  ev.fits["plancherel_max_dev"] = dev;
  ev.verdicts.push_back(at_most("plancherel_identity", dev, num(P, "identity_tol")));
  for (const auto& [k, s] : spread) {
    if (k == 0) continue;
    ev.fits["tuple" + std::to_string(k)] = {{"worst_spread", s}, {"max_ratio", rmax[k]}};
    ev.verdicts.push_back({"dilation_spread tuple" + std::to_string(k), s < num(P, "spread_bound"), s,
                           num(P, "spread_bound"), 0.0, "measured < target"});
  }
  return ev;
}

// ---------------------------------------------------------------------------
// mihlin_report

ExperimentRows mihlin_compute(const ExperimentContext& ctx) {
  const json& P = ctx.params;
  const int d = integer(P, "d"), nd = integer(P, "n_derivs");
  const double r = exponent_from_json(P.at("r")), rho = exponent_from_json(P.at("rho"));
  SymbolPtr m;
  try {
    m = P.at("symbol").is_null() ? riesz_symbol(d / r) : symbol_from_json(P.at("symbol"));
  } catch (const Error& e) {
    fail(ErrorKind::Config, e.what());
  }
  std::vector<double> R;
  for (int e : ints(P, "R_exponents")) R.push_back(std::ldexp(1.0, e));
  MihlinOptions o;
  o.numerical = P.at("numerical").get<bool>();
  o.seed = ctx.seed;
  const auto rep = mihlin_annulus_report(*m, d, r, rho, nd, R, o);
  ExperimentRows out;
  for (const auto& e : rep.entries)
    out.rows.push_back({{"alpha0", e.alpha[0]}, {"alpha1", e.alpha[1]}, {"R", e.R}, {"m1", e.m1}, {"m2", e.m2},
                        {"numerical", e.numerical}, {"flagged", e.flagged}, {"excluded_nodes", e.excluded_nodes}});
  out.notes = rep.notes;
  out.notes.push_back("symbol: " + m->name());
  return out;
}

Evaluation mihlin_evaluate(const json& P, const std::vector<json>& rows) {
  Evaluation ev;
  std::map<std::pair<int, int>, std::pair<double, double>> range;
  double M1 = 0.0, M2 = 0.0;
  for (const auto& r : rows) {
    const auto key = std::make_pair(r.at("alpha0").get<int>(), r.at("alpha1").get<int>());
    const double v = rget(r, "m1");
    auto [it, fresh] = range.try_emplace(key, v, v);
    if (!fresh) {
      it->second.first = std::min(it->second.first, v);
      it->second.second = std::max(it->second.second, v);
    }
    M1 = std::max(M1, v);
    M2 = std::max(M2, rget(r, "m2"));
  }
  double spread = 0.0;
  for (const auto& [k, mm] : range)
    if (mm.second > 0.0) spread = std::max(spread, (mm.second - mm.first) / mm.second);
  ev.fits["M1"] = M1;
  ev.fits["M2"] = M2;
  ev.fits["R_spread"] = spread;
  ev.verdicts.push_back(at_most("R_spread", spread, num(P, "spread_tol")));
  return ev;
}

std::vector<ExperimentDef> build_catalog() {
  std::vector<ExperimentDef> c;

  c.push_back({"torus_l2_exact",
               "norm_search on scalar torus multipliers with p = q = 2 against the Parseval value max |m_k|",
               {{"random_sets", 50}, {"max_radius", 64}, {"coefficients", nullptr}, {"tolerance", 1e-6}},
               {{"random_sets", "number of random coefficient sets"},
                {"max_radius", "largest mode radius n (modes -n..n)"},
                {"coefficients", "explicit coefficients m_{-n..n} (numbers or [re, im]); replaces the random sets"},
                {"tolerance", "allowed |search - max|m_k||"}},
               json::object(),
               {"instance", "n", "measured", "predicted", "abs_error", "converged"},
               {{"measured", "norm_search lower bound"}, {"predicted", "max_k |m_k|"}},
               false, torus_l2_compute, torus_l2_evaluate});

  c.push_back({"hls_scaling",
               "Riesz potential ratios under dilation f(lambda t), with and without the exponent relation",
               {{"s", 0.5}, {"p", 4.0 / 3.0}, {"deltas", {0.0, 0.1, -0.1}}, {"lambdas", {1, 2, 4, 8}},
                {"spread_tol", 0.01}, {"slope_tol", 0.05}},
               {{"s", "order of the Riesz potential |xi|^{-s}"},
                {"p", "input exponent"},
                {"deltas", "violations: 1/q = 1/p - s - delta"},
                {"lambdas", "dilation ladder"},
                {"spread_tol", "relative spread allowed when delta = 0"},
                {"slope_tol", "allowed |drift slope - delta|"}},
               json::object(),
               {"delta", "q", "lambda", "ratio"},
               {{"ratio", "|T f_lambda|_q / |f_lambda|_p"}},
               true, hls_compute, hls_evaluate});

  c.push_back({"fourier_sharpness",
               "witness ratio growth for the shift symbol with c_k = k^{-1/r} log(k+1)^{-2}",
               {{"u", 1.0}, {"p", 1.25}, {"q", 2.0}, {"ns", {8, 16, 32, 64, 128, 256}}, {"L", 32.0},
                {"slope_tol", 0.1}, {"log_power", -2.0}},
               {{"u", "sequence exponent of l^u"},
                {"p", "input exponent"},
                {"q", "output exponent; 1/r = 1/p - 1/q"},
                {"ns", "witness ladder"},
                {"L", "grid half-width"},
                {"slope_tol", "allowed |slope - prediction|"},
                {"log_power", "log correction in the fit"}},
               json::object(),
               {"n", "ratio", "grid_N"},
               {{"ratio", "|T f_n|_q / |f_n|_p"}, {"grid_N", "points of the line grid"}},
               false, fourier_compute, fourier_evaluate});

  c.push_back({"gamma_sharpness",
               "gamma-bound estimates of the weighted shift family and witness growth around the threshold",
               {{"u", 1.0}, {"p", 1.5}, {"q", 3.0}, {"alpha", 0.5}, {"ns", {8, 16, 32, 64, 128}}, {"L", 32.0},
                {"slope_tol", 0.1}, {"log_power", -2.0}},
               {{"u", "sequence exponent, in [1, 2]"},
                {"p", "input exponent in [1, 2]"},
                {"q", "output exponent >= 2"},
                {"alpha", "decay exponent of c_k"},
                {"ns", "family sizes"},
                {"L", "grid half-width for the witness"},
                {"slope_tol", "allowed slope deviation"},
                {"log_power", "log correction in the fits"}},
               {{"trials", 2000}, {"restarts", 4}},
               {"n", "gamma_estimate", "stderr", "singleton_max", "structured_ratio", "structured_ascended",
                "witness_ratio"},
               {{"gamma_estimate", "gamma-bound lower estimate (max over singletons and ascended tuples)"},
                {"singleton_max", "largest member norm"},
                {"structured_ratio", "ratio of the all-members tuple on e_0, before ascent"},
                {"structured_ascended", "the same tuple after coordinate ascent"},
                {"witness_ratio", "|T f_n|_q / |f_n|_p"}},
               false, gamma_compute, gamma_evaluate});

  c.push_back({"transference_check",
               "torus ratios of cube-averaged coefficients against C_H times line norm lower bounds",
               {{"symbols", 20}, {"a_values", {0.5, 1.0, 2.0}}, {"polynomials", 50}, {"radius", 3}, {"dim", 2},
                {"u", 1.5}, {"p", 1.5}, {"q", 3.0}, {"inflation", 1.05}, {"H_tolerance", 1e-6}},
               {{"symbols", "number of random cube_step symbols"},
                {"a_values", "cube sides, cycled over symbols"},
                {"polynomials", "random polynomials per symbol"},
                {"radius", "mode radius of symbols and polynomials"},
                {"dim", "dimension of l^u"},
                {"u", "sequence exponent"},
                {"p", "input exponent"},
                {"q", "output exponent"},
                {"inflation", "factor applied to the line lower bound"},
                {"H_tolerance", "allowed |H_2(0) - 1|"}},
               {{"ascent_iters", 100}},
               {"symbol", "a", "polynomial", "torus_ratio", "lhs", "line_lower_bound", "C_H", "rhs", "converged", "holds"},
               {{"lhs", "a^{1/r} torus ratio"}, {"rhs", "C_H * inflation * line lower bound"}},
               true, transference_compute, transference_evaluate});

  c.push_back({"converse_rbound",
               "R-bound estimates of cube_step coefficients on Hilbert models against the Plancherel norm",
               {{"instances", 20}, {"a_values", {0.5, 1.0, 2.0}}, {"radius", 3}, {"dim", 3}, {"inflation", 1.05}},
               {{"instances", "number of random symbols"},
                {"a_values", "cube sides"},
                {"radius", "mode radius"},
                {"dim", "Hilbert space dimension"},
                {"inflation", "factor applied to the oracle"}},
               {{"trials", 4000}},
               {"instance", "a", "rademacher", "stderr", "oracle_norm", "bound", "holds"},
               {{"oracle_norm", "sup_k |m_k| = |T_m| on L^2"}},
               false, converse_compute, converse_evaluate});

  c.push_back({"schur_bound",
               "Schur multiplier norms on S^a: oracle cases and stability across matrix sizes",
               {{"a", 1.5}, {"inv_r", 0.15}, {"ns", {4, 8, 16, 32}}, {"oracle_ns", {4, 8}}, {"tolerance", 1e-6},
                {"slope_min", -0.1}, {"slope_max", 0.1}, {"boundary", false}},
               {{"a", "Schatten exponent of the stability rows"},
                {"inv_r", "1/r of the decay m_j = (1 + |j|^{1/r})^{-1}"},
                {"ns", "matrix sizes"},
                {"oracle_ns", "sizes of the a = 2 oracle and pinching rows"},
                {"tolerance", "oracle tolerance"},
                {"slope_min", "lower slope bound"},
                {"slope_max", "upper slope bound"},
                {"boundary", "also measure the open boundary case (exploratory)"}},
               json::object(),
               {"kind", "n", "a", "inv_r", "measured", "predicted", "cm"},
               {{"measured", "search lower bound"}, {"predicted", "exact value (oracle rows), else 0"},
                {"cm", "sup_j (1 + |j|^{1/r}) |m_j|"}},
               false, schur_compute, schur_evaluate});

  c.push_back({"pitt_check",
               "weighted Fourier norm ratios for random Gaussian-bump functions under dilation",
               {{"tuples", {{2.0, 2.0, 0.25, 0.25}, {1.5, 3.0, 0.2, 0.2}, {2.0, 4.0, 0.1, 0.35}}},
                {"functions", 100}, {"lambdas", {1, 2, 4, 8}}, {"space_half_width", 16.0},
                {"frequency_half_width", 128.0}, {"points", 32768}, {"spread_bound", 1.2}, {"identity_tol", 1e-6}},
               {{"tuples", "[p, q, alpha, beta] with 1/p + 1/q + beta - alpha = 1"},
                {"functions", "random functions per tuple"},
                {"lambdas", "dilation ladder"},
                {"space_half_width", "quadrature half-width in s"},
                {"frequency_half_width", "quadrature half-width in xi"},
                {"points", "quadrature cells per side"},
                {"spread_bound", "max/min bound across the ladder"},
                {"identity_tol", "Plancherel tolerance"}},
               json::object(),
               {"tuple", "p", "q", "alpha", "beta", "function", "ratio_min", "ratio_max", "spread", "max_dev_from_one"},
               {{"spread", "ratio_max / ratio_min across the ladder"}},
               false, pitt_compute, pitt_evaluate});

  c.push_back({"mihlin_report",
               "weighted annulus integrals of symbol derivatives across dyadic radii",
               {{"symbol", nullptr}, {"d", 1}, {"r", 2.0}, {"rho", 2.0}, {"n_derivs", 2},
                {"R_exponents", {-4, -3, -2, -1, 0, 1, 2, 3, 4}}, {"numerical", false}, {"spread_tol", 1e-6}},
               {{"symbol", "symbol config; null means riesz_symbol(d/r)"},
                {"d", "dimension"},
                {"r", "integrability exponent in the weight"},
                {"rho", "annulus integral exponent"},
                {"n_derivs", "largest derivative order"},
                {"R_exponents", "annuli R = 2^e"},
                {"numerical", "use Richardson differences"},
                {"spread_tol", "allowed relative R-spread"}},
               json::object(),
               {"alpha0", "alpha1", "R", "m1", "m2", "numerical", "flagged", "excluded_nodes"},
               {{"m1", "(M1) entry"}, {"m2", "(M2) entry"}},
               false, mihlin_compute, mihlin_evaluate});
  return c;
}

}  // namespace

std::size_t witness_grid_size(int n, double L) {
  const auto need = static_cast<std::uint64_t>(std::ceil(16.0 * L * n));
  return std::max<std::size_t>(4096, std::bit_ceil(need));
}

double witness_ratio(int n, double u, double alpha, double p, double q, double L, std::size_t dim) {
  const GridSpec g{1, L, witness_grid_size(n, L)};
  const GridFunction f = witness_hormander(n, u, dim, g);
  const LineMultiplier T{shift_symbol(alpha, 2 * n, dim, u), g};
  const auto norms = apply_line_pointwise_norms(T, f);
  return bochner_from_norms(norms, g.cell(), q) / bochner_norm(f, p);
}

const std::vector<ExperimentDef>& experiment_catalog() {
  static const std::vector<ExperimentDef> catalog = build_catalog();
  return catalog;
}

const ExperimentDef& find_experiment(const std::string& name) {
  for (const auto& e : experiment_catalog())
    if (e.name == name) return e;
  fail(ErrorKind::Config, "unknown experiment '" + name + "'");
}

}  // namespace mlab
