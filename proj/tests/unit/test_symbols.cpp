#include <doctest.h>

#include <numbers>

#include "helpers.hpp"
#include "mlab/error.hpp"
#include "mlab/mihlin.hpp"
#include "mlab/symbols.hpp"

using namespace mlab;
using doctest::Approx;

TEST_SUITE("symbols") {

TEST_CASE("scalar symbol values") {
  const auto r = riesz_symbol(0.5);
  CHECK(r->scalar({2.0, 0.0}, 1).real() == Approx(std::pow(2.0, -0.5)));
  CHECK(r->scalar({3.0, 4.0}, 2).real() == Approx(0.2 * std::sqrt(5.0)).epsilon(1e-12));  // |xi| = 5
  CHECK(r->singular_at_zero());
  CHECK(*r->homogeneity() == Approx(-0.5));
  CHECK(bessel_symbol(2.0)->scalar({1.0, 0.0}, 1).real() == Approx(0.5));
  CHECK(gaussian_symbol()->scalar({1.0, 0.0}, 1).real() == Approx(std::exp(-std::numbers::pi)));
  CHECK(indicator_symbol(1.0)->scalar({1.0, 0.0}, 1).real() == 1.0);
  CHECK(indicator_symbol(1.0)->scalar({1.0001, 0.0}, 1).real() == 0.0);
  CHECK(scaled_symbol(gaussian_symbol(), cplx(0, 2))->scalar({0.0, 0.0}, 1) == cplx(0, 2));
}

TEST_CASE("operator-valued evaluation matches apply and entry") {
  const auto m = riesz_symbol(0.25, VectorModel::sequence(1.5, 3));
  const Xi xi{0.7, 0.0};
  const auto T = m->eval(xi, 1);
  CHECK(T.domain() == VectorModel::sequence(1.5, 3));
  const std::vector<cplx> x{1.0, cplx(0, 1), -2.0};
  std::vector<cplx> y(3);
  m->apply(xi, 1, x, y);
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(std::abs(y[i] - std::pow(0.7, -0.25) * x[i]) < 1e-14);
    CHECK(std::abs(m->entry(xi, 1, i, i) - std::pow(0.7, -0.25)) < 1e-14);
  }
  CHECK(m->op_norm(xi, 1) == Approx(std::pow(0.7, -0.25)));
}

TEST_CASE("shift symbol") {
  const double alpha = 0.3;
  const auto m = shift_symbol(alpha, 6, 8, 1.0);
  CHECK(shift_coefficient(alpha, 3) == Approx(std::pow(3.0, -alpha) / std::pow(std::log(4.0), 2)));
  // xi in (2, 3] picks c_3 S_3.
  const auto T = m->eval({2.5, 0.0}, 1);
  const Vector y = apply_operator(T, Vector::basis(T.domain(), 1));
  CHECK(std::abs(y.entries()(4) - shift_coefficient(alpha, 3)) < 1e-14);
  CHECK(y.entries().norm() == Approx(shift_coefficient(alpha, 3)));
  CHECK(m->op_norm({3.0, 0.0}, 1) == Approx(shift_coefficient(alpha, 3)));
  CHECK(m->op_norm({0.0, 0.0}, 1) == 0.0);
  CHECK(m->op_norm({6.5, 0.0}, 1) == 0.0);
}

TEST_CASE("cube step symbols and averaged coefficients") {
  const auto model = VectorModel::hilbert(2);
  std::map<MultiIndex, OperatorMatrix> coeffs;
  coeffs.emplace(MultiIndex{-1, 0}, OperatorMatrix::scalar(model, 2.0));
  coeffs.emplace(MultiIndex{0, 0}, OperatorMatrix::shift(model, 1));
  const auto m = cube_step_symbol(0.5, 1, coeffs);
  CHECK(m->op_norm({-0.25, 0.0}, 1) == Approx(2.0));
  CHECK(m->op_norm({0.25, 0.0}, 1) == Approx(1.0));
  CHECK(m->op_norm({0.75, 0.0}, 1) == 0.0);

  const auto c = averaged_coefficients(*m, 0.5, 1, 4);
  CHECK((c.at({-1, 0}).matrix() - coeffs.at({-1, 0}).matrix()).norm() < 1e-14);
  CHECK((c.at({0, 0}).matrix() - coeffs.at({0, 0}).matrix()).norm() < 1e-14);
  CHECK(c.at({1, 0}).matrix().norm() == 0.0);

  const auto cc = averaged_coefficients(*constant_symbol(cplx(0.0, 3.0)), 2.0, 3, 5);
  for (const auto& t : cc.m) CHECK(std::abs(t.matrix()(0, 0) - cplx(0.0, 3.0)) < 1e-14);
}

TEST_CASE("averaging drops singular nodes") {
  // Order 3 on [0, 1) puts a midpoint node exactly on the pole at 1/2.
  const auto pole = function_symbol("pole", [](const Xi& xi, int) { return 1.0 / cplx(xi[0] - 0.5); });
  const auto c = averaged_coefficients(*pole, 1.0, 1, 3);
  CHECK(c.warnings.size() == 1u);
  // The two remaining nodes 1/6 and 5/6 cancel.
  CHECK(std::abs(c.at({0, 0}).matrix()(0, 0)) < 1e-12);
  CHECK(averaged_coefficients(*riesz_symbol(0.5), 1.0, 1, 3).warnings.empty());
}

TEST_CASE("L^r symbol norms on the lattice") {
  const FrequencyLattice lat;
  // int e^{-2 pi xi^2} = 2^{-1/2}.
  CHECK(lr_symbol_norm(*gaussian_symbol(), 2.0, lat) == Approx(std::pow(2.0, -0.25)).epsilon(1e-12));
  CHECK(lr_symbol_norm(*gaussian_symbol(), kInf, lat) == Approx(1.0));
  // 129 nodes of width 1/64 in the closed unit ball.
  CHECK(lr_symbol_norm(*indicator_symbol(1.0), 1.0, lat) == Approx(129.0 / 64.0));
  CHECK(weak_lr_symbol_norm(*indicator_symbol(1.0), 2.0, lat) == Approx(std::sqrt(129.0 / 64.0)));
  // |xi|^{-1/2} is not in L^2 near 0.
  CHECK(std::isinf(lr_symbol_norm(*riesz_symbol(0.5), 2.0, lat)));
  // ... but its weighted sup with sigma = s is exactly 1.
  CHECK(uniform_weighted_bound(*riesz_symbol(0.5), 0.5, lat) == Approx(1.0).epsilon(1e-12));
  // Weak L^2 of |xi|^{-1/2} is 2^{1/2} in the continuum; the lattice sees a little less.
  const double w = weak_lr_symbol_norm(*riesz_symbol(0.5), 2.0, lat);
  CHECK(w <= std::sqrt(2.0) * (1 + 1e-12));
  CHECK(w >= 0.95 * std::sqrt(2.0));
}

TEST_CASE("two-dimensional lattice") {
  const FrequencyLattice lat{2, 1.0 / 16.0, 8.0};
  CHECK(lat.size() == 257u * 257u);
  // int e^{-2 pi |xi|^2} over R^2 = 1/2.
  CHECK(lr_symbol_norm(*gaussian_symbol(), 2.0, lat) == Approx(std::sqrt(0.5)).epsilon(1e-10));
}

TEST_CASE("kernel positivity") {
  const GridSpec g{1, 16.0, 2048};
  CHECK(kernel_positivity_check(*gaussian_symbol(), g).positive);
  CHECK_FALSE(kernel_positivity_check(*indicator_symbol(1.0), g).positive);
  CHECK(kernel_positivity_check(*bessel_symbol(2.0), g).positive);
}

TEST_CASE("homogeneity defect") {
  const std::vector<std::pair<Xi, double>> samples{{{0.3, 0.0}, 2.0}, {{1.7, 0.0}, 0.25}, {{-2.0, 0.0}, 8.0}};
  CHECK(homogeneity_defect(*riesz_symbol(0.7), 1, samples) < 1e-12);
  CHECK(homogeneity_defect(*scaled_symbol(riesz_symbol(0.7), 2.0), 1, samples) < 1e-12);
  CHECK_THROWS_AS((void)homogeneity_defect(*bessel_symbol(0.7), 1, samples), Error);
}

TEST_CASE("symbol config round trip") {
  const std::vector<SymbolPtr> syms{riesz_symbol(0.5), bessel_symbol(1.5), gaussian_symbol(), indicator_symbol(2.0),
                                    constant_symbol(cplx(1, -1)), scaled_symbol(riesz_symbol(0.25), 3.0),
                                    shift_symbol(0.4, 5, 7, 1.5)};
  for (const auto& s : syms) {
    CAPTURE(s->name());
    const auto back = symbol_from_json(s->spec());
    CHECK(back->spec() == s->spec());
    for (double x : {0.3, 1.0, 2.5, 4.2}) CHECK(back->op_norm({x, 0.0}, 1) == Approx(s->op_norm({x, 0.0}, 1)));
  }
  CHECK_THROWS_AS((void)symbol_from_json({{"kind", "nope"}}), Error);
  CHECK_THROWS_AS((void)symbol_from_json({{"kind", "riesz"}}), Error);
}

TEST_CASE("Mihlin annulus integrals are dilation invariant for homogeneous symbols") {
  std::vector<double> R;
  for (int e = -4; e <= 4; ++e) R.push_back(std::ldexp(1.0, e));
  const auto rep = mihlin_annulus_report(*riesz_symbol(0.5), 1, 2.0, 2.0, 2, R);
  CHECK(rep.entries.size() == 3 * R.size());
  CHECK(mihlin_R_spread(rep) < 1e-6);
  // Numerical derivatives agree with the closed forms.
  MihlinOptions num;
  num.numerical = true;
  const auto rn = mihlin_annulus_report(*riesz_symbol(0.5), 1, 2.0, 2.0, 2, {1.0}, num);
  const auto rc = mihlin_annulus_report(*riesz_symbol(0.5), 1, 2.0, 2.0, 2, {1.0});
  for (std::size_t i = 0; i < rn.entries.size(); ++i) CHECK(rn.entries[i].m1 == Approx(rc.entries[i].m1).epsilon(1e-6));
}

TEST_CASE("numerical derivative of the Gaussian") {
  bool unstable = false;
  const auto d1 = numerical_derivative(*gaussian_symbol(), {0.4, 0.0}, 1, {1, 0}, unstable);
  const double want = -2 * std::numbers::pi * 0.4 * std::exp(-std::numbers::pi * 0.16);
  CHECK(d1(0, 0).real() == Approx(want).epsilon(1e-8));
  CHECK_FALSE(unstable);
}

}  // TEST_SUITE
