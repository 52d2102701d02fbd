#include <doctest.h>

#include <numbers>

#include "helpers.hpp"
#include "mlab/error.hpp"
#include "mlab/parallel.hpp"
#include "mlab/probes.hpp"

using namespace mlab;
using doctest::Approx;

namespace {

ProbeConfig quick(int trials = 2000) {
  ProbeConfig c;
  c.trials = trials;
  c.restarts = 4;
  c.ascent_iters = 60;
  return c;
}

struct ThreadScope {
  unsigned saved = default_threads();
  explicit ThreadScope(unsigned t) { set_default_threads(t); }
  ~ThreadScope() { set_default_threads(saved); }
};

}  // namespace

TEST_SUITE("probes") {

TEST_CASE("probe config JSON") {
  ProbeConfig c;
  c.master_seed = 99;
  c.trials = 17;
  const auto back = probe_config_from_json(probe_config_to_json(c));
  CHECK(back.master_seed == 99);
  CHECK(back.trials == 17);
  CHECK(back.restarts == c.restarts);
  const auto partial = probe_config_from_json({{"restarts", 2}}, c);
  CHECK(partial.trials == 17);
  CHECK(partial.restarts == 2);
  CHECK_THROWS_AS((void)probe_config_from_json({{"restart", 2}}), Error);
  ProbeConfig bad;
  bad.trials = 0;
  CHECK_THROWS_AS(bad.validate(), Error);
}

TEST_CASE("torus norm search at p = q = 2 finds the largest coefficient") {
  const TorusMultiplier M = TorusMultiplier::scalar(1, {0.3, -1.7, cplx(0, 0.9)});
  const auto r = norm_search(M, 2.0, 2.0, quick());
  CHECK(r.summary.lower_bound == Approx(1.7).epsilon(1e-12));
  CHECK(r.summary.converged);
  REQUIRE(r.witness.has_value());
  CHECK(ratio(M, *r.witness, 2.0, 2.0) == Approx(r.summary.lower_bound).epsilon(1e-12));
}

TEST_CASE("torus norm search is a lower bound in general exponents") {
  // Identity multiplier: |f|_q >= |f|_p on the probability torus for q >= p, and
  // the constant polynomial attains ratio 1 for p >= q.
  const TorusMultiplier id = TorusMultiplier::scalar(1, {1.0, 1.0, 1.0});
  const auto r = norm_search(id, 3.0, 1.5, quick());
  CHECK(r.summary.lower_bound == Approx(1.0).epsilon(1e-9));
  CHECK(r.summary.lower_bound <= 1.0 + 1e-12);
  CHECK_THROWS_AS((void)norm_search(id, 1.0, 2.0, quick()), Error);
}

TEST_CASE("torus norm search is independent of the thread count") {
  Rng rng(3);
  std::vector<cplx> m(9);
  for (auto& z : m) z = rng.complex_gaussian();
  const TorusMultiplier M = TorusMultiplier::scalar(1, m, VectorModel::sequence(1.5, 2));
  TorusSearch a = [&] { ThreadScope s(1); return norm_search(M, 1.5, 3.0, quick()); }();
  TorusSearch b = [&] { ThreadScope s(4); return norm_search(M, 1.5, 3.0, quick()); }();
  CHECK(a.summary.lower_bound == b.summary.lower_bound);
  CHECK(a.summary.witness_digest == b.summary.witness_digest);
  CHECK(a.summary.restart_best == b.summary.restart_best);
}

TEST_CASE("line norm search for the Gaussian multiplier at p = q = 2") {
  const GridSpec g{1, 8.0, 512};
  const auto r = norm_search(LineMultiplier{gaussian_symbol(), g}, 2.0, 2.0, quick());
  CHECK(r.summary.lower_bound <= 1.0 + 1e-9);
  CHECK(r.summary.lower_bound >= 0.99);
}

TEST_CASE("Fourier constant of the scalar field") {
  const GridSpec g{1, 8.0, 1024};
  const auto r2 = fourier_constant_lower_bound(VectorModel::scalar(), 2.0, g, quick());
  CHECK(r2.summary.lower_bound == Approx(1.0).epsilon(1e-9));
  const auto r1 = fourier_constant_lower_bound(VectorModel::scalar(), 1.0, g, quick());
  CHECK(r1.summary.lower_bound <= 1.0 + 1e-9);
  CHECK(r1.summary.lower_bound >= 0.999);
  CHECK_THROWS_AS((void)fourier_constant_lower_bound(VectorModel::scalar(), 2.5, g, quick()), Error);
}

TEST_CASE("gamma bounds of scalar multiples") {
  const auto H = VectorModel::hilbert(3);
  OperatorFamily F;
  for (double k : {1.0, 2.0, 3.0}) F.members.push_back(OperatorMatrix::scalar(H, k));
  const auto g = gamma_bound_estimate(F, quick(5000));
  CHECK(g.singleton_max == Approx(3.0));
  CHECK(g.lower_bound == Approx(3.0).epsilon(0.03));
  const auto r = rademacher_bound_estimate(F, quick(5000));
  CHECK(r.lower_bound == Approx(3.0).epsilon(0.03));
}

TEST_CASE("gamma bound never drops below the singleton maximum") {
  Rng rng(8);
  const auto X = VectorModel::sequence(1.5, 3), Y = VectorModel::sequence(3.0, 3);
  OperatorFamily F;
  for (int k = 0; k < 4; ++k) F.members.emplace_back(X, Y, test::random_matrix(rng, 3, 3));
  const auto g = gamma_bound_estimate(F, quick());
  double top = 0.0;
  for (const auto& T : F.members) top = std::max(top, operator_norm(T).value);
  CHECK(g.singleton_max == Approx(top).epsilon(1e-12));
  CHECK(g.lower_bound >= g.singleton_max - 3 * g.std_error);
  CHECK(g.restart_best.size() == 4u);
}

TEST_CASE("family estimates are independent of the thread count") {
  Rng rng(9);
  const auto X = VectorModel::sequence(1.25, 3);
  OperatorFamily F;
  for (int k = 0; k < 5; ++k) F.members.emplace_back(X, X, test::random_matrix(rng, 3, 3));
  FamilyEstimate a = [&] { ThreadScope s(1); return gamma_bound_estimate(F, quick()); }();
  FamilyEstimate b = [&] { ThreadScope s(3); return gamma_bound_estimate(F, quick()); }();
  CHECK(a.lower_bound == b.lower_bound);
  CHECK(a.std_error == b.std_error);
  CHECK(a.witness_digest == b.witness_digest);
  CHECK(a.to_json() == b.to_json());
}

TEST_CASE("seed tuples are reported before ascent") {
  const auto H = VectorModel::hilbert(2);
  OperatorFamily F;
  F.members.push_back(OperatorMatrix::scalar(H, 1.0));
  F.members.push_back(OperatorMatrix::scalar(H, 0.5));
  FamilyTuple seed{{0, 1}, {Eigen::VectorXcd::Unit(2, 0), Eigen::VectorXcd::Unit(2, 1)}};
  const auto g = gamma_bound_estimate(F, quick(), {seed});
  REQUIRE(g.seed_values.size() == 1u);
  // Orthogonal vectors in a Hilbert space: (1 + 1/4)^{1/2} / 2^{1/2}, up to sampling.
  CHECK(g.seed_values[0] == Approx(std::sqrt(1.25 / 2.0)).epsilon(0.05));
  CHECK(g.restart_best[0] >= g.seed_values[0]);
  CHECK_THROWS_AS((void)gamma_bound_estimate(F, quick(), {FamilyTuple{{5}, {Eigen::VectorXcd::Unit(2, 0)}}}), Error);
}

TEST_CASE("type and cotype constants") {
  const auto l2 = VectorModel::sequence(2.0, 4);
  CHECK(type_constant_estimate(l2, 2.0, quick(4000)).lower_bound == Approx(1.0).epsilon(0.03));
  CHECK(cotype_constant_estimate(l2, 2.0, quick(4000)).lower_bound == Approx(1.0).epsilon(0.03));
  // l^1_4 at p = 2, basis tuple: (16 E|g|^2... ) = sqrt(3 pi + 4) / 2.
  const auto t = type_constant_estimate(VectorModel::sequence(1.0, 4), 2.0, quick(20000));
  CHECK(t.lower_bound >= std::sqrt(3 * std::numbers::pi + 4) / 2 * 0.97);
  CHECK_THROWS_AS((void)type_constant_estimate(l2, 2.5, quick()), Error);
  CHECK_THROWS_AS((void)cotype_constant_estimate(l2, 1.5, quick()), Error);
}

TEST_CASE("type constants grow for l^1") {
  std::vector<double> est;
  for (std::size_t n : {2u, 4u, 8u, 16u})
    est.push_back(type_constant_estimate(VectorModel::sequence(1.0, n), 1.5, quick(4000)).lower_bound);
  for (std::size_t i = 1; i < est.size(); ++i) CHECK(est[i] > est[i - 1]);
}

TEST_CASE("weighted symbol families") {
  const auto F = weighted_symbol_family(*riesz_symbol(0.5), 0.5, {{1.0, 0.0}, {4.0, 0.0}, {0.25, 0.0}});
  REQUIRE(F.members.size() == 3u);
  for (const auto& T : F.members) CHECK(std::abs(T.matrix()(0, 0) - 1.0) < 1e-14);
  CHECK_THROWS_AS((void)weighted_symbol_family(*riesz_symbol(0.5), 0.5, {{0.0, 0.0}}), Error);
  CHECK_THROWS_AS((void)weighted_symbol_family(*riesz_symbol(0.5), 0.5, {}), Error);
  OperatorFamily bad;
  bad.members.push_back(OperatorMatrix::identity(VectorModel::hilbert(2)));
  bad.members.push_back(OperatorMatrix::identity(VectorModel::hilbert(3)));
  CHECK_THROWS_AS(bad.validate(), Error);
}

}  // TEST_SUITE
