#include <doctest.h>

#include <numbers>

#include "helpers.hpp"
#include "mlab/error.hpp"
#include "mlab/serialize.hpp"
#include "mlab/signal.hpp"

using namespace mlab;
using doctest::Approx;

namespace {

constexpr double kPi = std::numbers::pi;

GridFunction gaussian(const GridSpec& g, double width = 1.0, double shift = 0.0) {
  GridFunction f(g, VectorModel::scalar());
  std::vector<cplx> v(g.size());
  for (std::size_t i = 0; i < g.N; ++i) {
    const double t = (g.coord(i) - shift) / width;
    v[i] = std::exp(-kPi * t * t);
  }
  f.set_component(0, std::move(v));
  return f;
}

}  // namespace

TEST_SUITE("signal") {

TEST_CASE("grid conventions") {
  const GridSpec g{1, 8.0, 64};
  CHECK(g.step() == 0.25);
  CHECK(g.coord(0) == -8.0);
  CHECK(g.coord(32) == 0.0);
  CHECK(g.dual().L == 2.0);
  CHECK(g.dual().N == 64);
  CHECK_THROWS_AS((GridSpec{3, 1.0, 64}).validate(), Error);
  CHECK_THROWS_AS((GridSpec{1, 1.0, 63}).validate(), Error);
  CHECK_THROWS_AS((GridSpec{1, -1.0, 64}).validate(), Error);
}

TEST_CASE("the Gaussian is its own transform") {
  const GridSpec g{1, 16.0, 4096};
  const auto fh = fourier_forward(gaussian(g));
  CHECK(fh.grid() == g.dual());
  const GridSpec dg = g.dual();
  double worst = 0.0;
  for (std::size_t j = 0; j < dg.N; ++j) {
    const double xi = dg.coord(j);
    worst = std::max(worst, std::abs(fh.component(0)[j] - std::exp(-kPi * xi * xi)));
  }
  CHECK(worst < 1e-12);
}

TEST_CASE("transform round trip and Parseval") {
  const GridSpec g{1, 8.0, 1024};
  auto f = gaussian(g, 0.7, 1.3);
  f *= cplx(0.0, 2.0);
  const auto fh = fourier_forward(f);
  CHECK(bochner_norm(fh, 2.0) == Approx(bochner_norm(f, 2.0)).epsilon(1e-12));
  const auto back = fourier_inverse(fh);
  double worst = 0.0;
  for (std::size_t i = 0; i < g.N; ++i) worst = std::max(worst, std::abs(back.component(0)[i] - f.component(0)[i]));
  CHECK(worst < 1e-13);
}

TEST_CASE("Gaussian L^p norms") {
  // |e^{-pi t^2}|_p = p^{-1/(2p)}.
  const GridSpec g{1, 16.0, 8192};
  const auto f = gaussian(g);
  for (double p : {1.0, 1.5, 2.0, 3.0}) CHECK(bochner_norm(f, p) == Approx(std::pow(p, -0.5 / p)).epsilon(1e-10));
  CHECK(bochner_norm(f, kInf) == Approx(1.0));
}

TEST_CASE("two-dimensional transform") {
  const GridSpec g{2, 8.0, 128};
  GridFunction f(g, VectorModel::scalar());
  auto c = f.mutable_component(0);
  for (std::size_t i = 0; i < g.size(); ++i) {
    const auto x = g.point(i);
    c[i] = std::exp(-kPi * (x[0] * x[0] + x[1] * x[1]));
  }
  const auto fh = fourier_forward(f);
  const GridSpec dg = g.dual();
  double worst = 0.0;
  for (std::size_t i = 0; i < dg.size(); ++i) {
    const auto x = dg.point(i);
    worst = std::max(worst, std::abs(fh.component(0)[i] - std::exp(-kPi * (x[0] * x[0] + x[1] * x[1]))));
  }
  CHECK(worst < 1e-12);
}

TEST_CASE("weak norms") {
  const std::vector<double> v{1.0, 2.0, 3.0};
  CHECK(weak_norm_from_values(v, 1.0, 1.0) == Approx(4.0));
  CHECK(weak_norm_from_values(v, 1.0, 2.0) == Approx(3.0));
  CHECK(weak_norm_from_values(v, 0.5, 1.0) == Approx(2.0));
  // Weak norms never exceed strong ones.
  const GridSpec g{1, 8.0, 2048};
  const auto f = gaussian(g);
  for (double p : {1.0, 1.5, 3.0}) CHECK(weak_norm(f, p) <= bochner_norm(f, p) * (1 + 1e-12));
}

TEST_CASE("L^p duality map norms grid functions") {
  const GridSpec g{1, 8.0, 512};
  GridFunction f(g, VectorModel::sequence(1.5, 2));
  auto a = f.mutable_component(0);
  auto b = f.mutable_component(1);
  for (std::size_t i = 0; i < g.N; ++i) {
    const double t = g.coord(i);
    a[i] = std::exp(-t * t) * cplx(1.0, t);
    b[i] = 1.0 / (1.0 + t * t);
  }
  for (double p : {1.25, 2.0, 4.0}) {
    const auto J = lp_duality_map(f, p);
    CHECK(grid_pairing(f, J).real() == Approx(bochner_norm(f, p)).epsilon(1e-10));
    CHECK(bochner_norm(J, dual_exponent(p)) == Approx(1.0).epsilon(1e-10));
  }
  CHECK_THROWS_AS((void)lp_duality_map(GridFunction(g, VectorModel::scalar()), 2.0), Error);
}

TEST_CASE("torus sampling round trip and exact quadrature") {
  TrigPolynomial f(1, 3, VectorModel::sequence(2.0, 2));
  f.coeff(f.mode_index({-3, 0}))(0) = 1.0;
  f.coeff(f.mode_index({2, 0}))(1) = cplx(0.5, -1.0);
  f.coeff(f.mode_index({0, 0}))(0) = 2.0;
  const auto s = sample_torus(f);
  CHECK(s.grid().N == torus_resolution(3));
  const auto g = project_torus(s, 3);
  CHECK((g.coeffs() - f.coeffs()).norm() < 1e-13);
  // Point values agree with direct evaluation (samples sit at t = -1/2 + i/M).
  const double t = -0.5 + 5.0 / double(s.grid().N);
  const Vector v = f.eval({t, 0.0});
  CHECK(std::abs(v.entries()(0) - s.component(0)[5]) < 1e-13);
  CHECK(std::abs(v.entries()(1) - s.component(1)[5]) < 1e-13);

  // |1 + e(t)|_4 = 6^{1/4}, and Parseval at p = 2.
  TrigPolynomial h(1, 1, VectorModel::scalar());
  h.coeff(h.mode_index({0, 0}))(0) = 1.0;
  h.coeff(h.mode_index({1, 0}))(0) = 1.0;
  CHECK(bochner_norm(h, 4.0) == Approx(1.5650845800732873).epsilon(1e-13));
  CHECK(bochner_norm(f, 2.0) == Approx(std::sqrt(1.0 + 1.25 + 4.0)).epsilon(1e-13));
  CHECK_THROWS_AS((void)sample_torus(f, 6), Error);
}

TEST_CASE("two-dimensional torus polynomials") {
  TrigPolynomial f(2, 2, VectorModel::scalar());
  CHECK(f.modes() == 25);
  f.coeff(f.mode_index({1, -2}))(0) = 3.0;
  f.coeff(f.mode_index({0, 1}))(0) = 4.0;
  CHECK(f.mode(f.mode_index({1, -2})) == std::array<int, 2>{1, -2});
  CHECK(bochner_norm(f, 2.0) == Approx(5.0).epsilon(1e-13));
  const auto g = project_torus(sample_torus(f), 2);
  CHECK((g.coeffs() - f.coeffs()).norm() < 1e-13);
}

TEST_CASE("band functions have indicator transforms") {
  const GridSpec g{1, 16.0, 1024};
  const auto fh = fourier_forward(phi_k_band(3, g));
  const GridSpec dg = g.dual();
  for (std::size_t j = 0; j < dg.N; ++j) {
    const double xi = dg.coord(j);
    const double want = (xi > 2.0 && xi <= 3.0) ? 1.0 : 0.0;
    CHECK(std::abs(fh.component(0)[j] - want) < 1e-12);
  }
}

TEST_CASE("closed-form witness modulus") {
  // |f_n(t)| = |sinc(t)| |sin(n pi t) / sin(pi t)|.
  const GridSpec g{1, 8.0, 4096};
  const int n = 5;
  const auto f = witness_hormander(n, 1.5, 11, g, WitnessForm::ClosedForm);
  const auto a = f.pointwise_norms();
  for (std::size_t i = 0; i < g.N; i += 7) {
    const double t = g.coord(i);
    if (std::abs(std::sin(kPi * t)) < 1e-9) continue;
    const double want = sinc_modulus(t) * std::abs(std::sin(n * kPi * t) / std::sin(kPi * t));
    CHECK(a[i] == Approx(want).epsilon(1e-10));
  }
  CHECK_THROWS_AS((void)witness_hormander(5, 1.0, 10, g), Error);
}

TEST_CASE("closed-form phi_k") {
  const GridSpec g{1, 4.0, 256};
  const auto f = phi_k(2, g);
  for (std::size_t i = 1; i < g.N; i += 3) {
    const double t = g.coord(i);
    const cplx want = std::polar(1.0, 2 * kPi * 1.5 * t) * (t == 0.0 ? 1.0 : std::sin(kPi * t) / (kPi * t));
    CHECK(std::abs(f.component(0)[i] - want) < 1e-13);
  }
}

TEST_CASE("periodization of |sinc|^p") {
  CHECK(sinc_modulus(0.0) == 1.0);
  CHECK(sinc_modulus(0.5) == Approx(2.0 / kPi));
  const std::vector<double> t{0.0, 0.1, 0.25, 0.4, 0.5};
  const auto h2 = periodization_H(2.0, 1, t);
  for (double v : h2.values) CHECK(v == Approx(1.0).epsilon(1e-9));  // sum_j sinc^2(t + j) = 1
  const auto h3 = periodization_H(1.5, 1, std::vector<double>{0.0});
  CHECK(h3.values[0] == Approx(1.0).epsilon(1e-9));
  // At t = 1/2: 2 (2/pi)^p (1 - 2^{-p}) zeta(p); this is the supremum for p < 2.
  CHECK(periodization_sup(1.5, 1) == Approx(1.7156094074460446).epsilon(1e-6));
  CHECK(periodization_sup(3.0, 1) == Approx(1.0).epsilon(1e-9));
  CHECK(periodization_H(2.0, 2, std::vector<double>{0.3}).values[0] == Approx(1.0).epsilon(1e-9));
  CHECK_THROWS_AS((void)periodization_H(1.0, 1, t), Error);
}

TEST_CASE("JSON forms round trip") {
  const GridSpec g{1, 4.0, 64};
  auto f = gaussian(g);
  const auto j = grid_function_to_json(f);
  const auto f2 = grid_function_from_json(j);
  CHECK(f2.grid() == g);
  for (std::size_t i = 0; i < g.N; ++i) CHECK(f2.component(0)[i] == f.component(0)[i]);

  TrigPolynomial p(1, 2, VectorModel::sequence(kInf, 2));
  p.coeff(1)(1) = cplx(1.0, -2.0);
  const auto p2 = trig_polynomial_from_json(trig_polynomial_to_json(p));
  CHECK(p2.model() == p.model());
  CHECK(p2.coeffs() == p.coeffs());
  CHECK(exponent_from_json(exponent_to_json(kInf)) == kInf);
  CHECK(complex_from_json(json::array({1.0, 2.0})) == cplx(1.0, 2.0));
  CHECK(model_from_json(model_to_json(VectorModel::schatten(1.5, 3))) == VectorModel::schatten(1.5, 3));
}

}  // TEST_SUITE
