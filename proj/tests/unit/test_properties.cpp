// Invariants checked over seeded random instances.

#include <doctest.h>

#include <numbers>

#include "helpers.hpp"
#include "mlab/multiplier.hpp"
#include "mlab/probes.hpp"
#include "mlab/schur.hpp"

using namespace mlab;
using doctest::Approx;

namespace {

constexpr int kCases = 12;

GridFunction random_bumps(Rng& rng, const GridSpec& g, const VectorModel& model) {
  GridFunction f(g, model);
  for (std::size_t c = 0; c < model.dim(); ++c) {
    auto col = f.mutable_component(c);
    for (int b = 0; b < 3; ++b) {
      const double centre = rng.uniform(-3, 3), width = rng.uniform(0.5, 2.0);
      const cplx amp = rng.complex_gaussian();
      for (std::size_t i = 0; i < g.N; ++i) {
        const double t = (g.coord(i) - centre) / width;
        col[i] += amp * std::exp(-std::numbers::pi * t * t);
      }
    }
  }
  return f;
}

double max_diff(const GridFunction& a, const GridFunction& b) {
  double worst = 0.0;
  for (std::size_t c = 0; c < a.model().dim(); ++c) {
    const auto x = a.component(c), y = b.component(c);
    for (std::size_t i = 0; i < a.grid().size(); ++i) {
      const cplx xv = x.empty() ? cplx{} : x[i], yv = y.empty() ? cplx{} : y[i];
      worst = std::max(worst, std::abs(xv - yv));
    }
  }
  return worst;
}

}  // namespace

TEST_SUITE("properties") {

TEST_CASE("line multipliers are linear") {
  Rng rng(100);
  const GridSpec g{1, 16.0, 1024};
  const auto model = VectorModel::sequence(1.5, 4);
  const LineMultiplier M{shift_symbol(0.5, 3, 4, 1.5), g};
  for (int rep = 0; rep < kCases; ++rep) {
    const auto f = random_bumps(rng, g, model), h = random_bumps(rng, g, model);
    const cplx a = rng.complex_gaussian(), b = rng.complex_gaussian();
    GridFunction lhs_in = f;
    lhs_in *= a;
    GridFunction hb = h;
    hb *= b;
    lhs_in += hb;
    GridFunction rhs = apply_line(M, f);
    rhs *= a;
    GridFunction rh = apply_line(M, h);
    rh *= b;
    rhs += rh;
    CHECK(max_diff(apply_line(M, lhs_in), rhs) < 1e-12);
  }
}

TEST_CASE("composition of multipliers multiplies symbols") {
  Rng rng(101);
  const GridSpec g{1, 16.0, 1024};
  const auto m1 = bessel_symbol(1.0), m2 = gaussian_symbol();
  const auto prod = function_symbol("product", [&](const Xi& xi, int d) { return m1->scalar(xi, d) * m2->scalar(xi, d); });
  for (int rep = 0; rep < kCases; ++rep) {
    const auto f = random_bumps(rng, g, VectorModel::scalar());
    const auto two_step = apply_line({m1, g}, apply_line({m2, g}, f));
    CHECK(max_diff(two_step, apply_line({prod, g}, f)) < 1e-12);
  }
}

TEST_CASE("Parseval on the line and on the torus") {
  Rng rng(102);
  const GridSpec g{1, 16.0, 2048};
  for (int rep = 0; rep < kCases; ++rep) {
    const auto f = random_bumps(rng, g, VectorModel::hilbert(2));
    CHECK(bochner_norm(fourier_forward(f), 2.0) == Approx(bochner_norm(f, 2.0)).epsilon(1e-12));
    TrigPolynomial p(1, 5, VectorModel::hilbert(2));
    p.coeffs() = test::random_matrix(rng, 2, p.modes());
    CHECK(bochner_norm(p, 2.0) == Approx(p.coeffs().norm()).epsilon(1e-12));
  }
}

TEST_CASE("unimodular multipliers are L^2 isometries on both sides") {
  Rng rng(103);
  const GridSpec g{1, 16.0, 1024};
  const auto phase = function_symbol("phase", [](const Xi& xi, int) { return std::polar(1.0, 3.0 * xi[0]); });
  for (int rep = 0; rep < kCases; ++rep) {
    const auto f = random_bumps(rng, g, VectorModel::scalar());
    CHECK(ratio(LineMultiplier{phase, g}, f, 2.0, 2.0) == Approx(1.0).epsilon(1e-12));
    std::vector<cplx> m(11);
    for (auto& z : m) z = rng.unimodular();
    TrigPolynomial p(1, 5, VectorModel::scalar());
    p.coeffs() = test::random_matrix(rng, 1, p.modes());
    CHECK(ratio(TorusMultiplier::scalar(1, m), p, 2.0, 2.0) == Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("torus application commutes with sampling") {
  // Multiplying coefficients equals sampling, projecting, and multiplying.
  Rng rng(104);
  SymbolCoefficients c;
  c.n = 4;
  const auto X = VectorModel::sequence(3.0, 2);
  for (int k = -4; k <= 4; ++k) c.m.emplace_back(X, X, test::random_matrix(rng, 2, 2));
  const TorusMultiplier M(c);
  for (int rep = 0; rep < kCases; ++rep) {
    TrigPolynomial f(1, 4, X);
    f.coeffs() = test::random_matrix(rng, 2, f.modes());
    const auto direct = apply_torus(M, f);
    const auto via = apply_torus(M, project_torus(sample_torus(f, 64), 4));
    CHECK((direct.coeffs() - via.coeffs()).norm() < 1e-12);
  }
}

TEST_CASE("line and torus agree for cube-step symbols on periodic inputs") {
  // A trigonometric polynomial times a wide window has a transform concentrated
  // near the integers; a cube_step symbol with a = 1 centred on them acts on
  // it like the torus multiplier with the same coefficients.
  Rng rng(105);
  std::map<MultiIndex, OperatorMatrix> coeffs;
  std::vector<cplx> vals;
  for (int k = -2; k <= 2; ++k) {
    const cplx v = rng.complex_gaussian();
    vals.push_back(v);
    coeffs.emplace(MultiIndex{k, 0}, OperatorMatrix::scalar(VectorModel::scalar(), v));
  }
  // Cubes [k - 1/2, k + 1/2): shift the step symbol by 1/2.
  const auto step = cube_step_symbol(1.0, 1, coeffs);
  const auto centred = function_symbol("centred", [step](const Xi& xi, int d) { return step->eval({xi[0] + 0.5, 0.0}, d).matrix()(0, 0); });
  const TorusMultiplier T = TorusMultiplier::scalar(1, vals);
  const GridSpec g{1, 128.0, 16384};
  for (int rep = 0; rep < 4; ++rep) {
    TrigPolynomial p(1, 2, VectorModel::scalar());
    p.coeffs() = test::random_matrix(rng, 1, p.modes());
    const auto Tp = apply_torus(T, p);
    GridFunction f(g, VectorModel::scalar()), want(g, VectorModel::scalar());
    auto fc = f.mutable_component(0);
    auto wc = want.mutable_component(0);
    for (std::size_t i = 0; i < g.N; ++i) {
      const double t = g.coord(i), w = std::exp(-std::numbers::pi * t * t / (24.0 * 24.0));
      fc[i] = w * p.eval({t, 0.0}).entries()(0);
      wc[i] = w * Tp.eval({t, 0.0}).entries()(0);
    }
    const auto got = apply_line({centred, g}, f);
    CHECK(max_diff(got, want) < 1e-9 * std::max(1.0, bochner_norm(f, kInf)));
  }
}

TEST_CASE("Schur multipliers are linear and adjoint-compatible") {
  Rng rng(106);
  for (int rep = 0; rep < kCases; ++rep) {
    SchurData d;
    for (int j = -3; j <= 3; ++j)
      if (rng.uniform() < 0.6) d.m[j] = rng.complex_gaussian();
    const auto e = SpectralResolution::singletons(6);
    const auto v = test::random_matrix(rng, 6, 6), w = test::random_matrix(rng, 6, 6);
    const cplx a = rng.complex_gaussian();
    CHECK((schur_multiply(d, e, a * v + w) - (a * schur_multiply(d, e, v) + schur_multiply(d, e, w))).norm() < 1e-12);
    const auto W = schur_symbol_matrix(d, e);
    const cplx lhs = (schur_multiply(d, e, v) * w.adjoint()).trace();
    const cplx rhs = (v * W.conjugate().cwiseProduct(w).adjoint()).trace();
    CHECK(std::abs(lhs - rhs) < 1e-11);
    const auto r = reflect_conjugate(d);
    CHECK((schur_multiply(r, e, v) - schur_multiply(d, e, v.adjoint()).adjoint()).norm() < 1e-12);
  }
}

TEST_CASE("norm monotonicity") {
  Rng rng(107);
  for (int rep = 0; rep < kCases; ++rep) {
    const auto x = test::random_vector(rng, 5);
    const std::span<const cplx> s{x.data(), 5};
    double prev = 1e300;
    for (double u : {1.0, 1.5, 2.0, 4.0, kInf}) {
      const double n = VectorModel::sequence(u, 5).norm(s);
      CHECK(n <= prev * (1 + 1e-14));
      prev = n;
    }
    // On the probability torus L^p norms increase with p.
    TrigPolynomial p(1, 3, VectorModel::scalar());
    p.coeffs() = test::random_matrix(rng, 1, p.modes());
    double last = 0.0;
    for (double q : {1.0, 1.5, 2.0, 3.0, kInf}) {
      const double n = bochner_norm(p, q);
      CHECK(n >= last * (1 - 1e-14));
      last = n;
    }
  }
  // Pointwise domination carries over to lattice L^r norms.
  const FrequencyLattice lat{1, 1.0 / 32.0, 16.0};
  for (double r : {1.0, 2.0, 3.0})
    CHECK(lr_symbol_norm(*gaussian_symbol(), r, lat) <= lr_symbol_norm(*bessel_symbol(1.0), r, lat));
}

TEST_CASE("norm searches return achieved ratios") {
  // Every reported lower bound is the ratio of its own witness.
  Rng rng(108);
  for (int rep = 0; rep < 4; ++rep) {
    std::vector<cplx> m(7);
    for (auto& z : m) z = rng.complex_gaussian();
    const TorusMultiplier T = TorusMultiplier::scalar(1, m, VectorModel::sequence(1.25, 2));
    ProbeConfig cfg;
    cfg.master_seed = static_cast<std::uint64_t>(rep);
    cfg.restarts = 3;
    cfg.ascent_iters = 50;
    const auto r = norm_search(T, 1.5, 2.5, cfg);
    REQUIRE(r.witness.has_value());
    CHECK(ratio(T, *r.witness, 1.5, 2.5) == Approx(r.summary.lower_bound).epsilon(1e-12));
  }
}

}  // TEST_SUITE
