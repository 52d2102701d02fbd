#include <doctest.h>

#include "helpers.hpp"
#include "mlab/error.hpp"
#include "mlab/schur.hpp"

using namespace mlab;
using doctest::Approx;

namespace {

ProbeConfig quick() {
  ProbeConfig c;
  c.restarts = 3;
  c.ascent_iters = 100;
  return c;
}

SchurData sample_data() {
  SchurData d;
  d.m = {{-2, cplx(0.5, 0.5)}, {0, 1.0}, {1, -0.75}, {3, cplx(0, 0.25)}};
  return d;
}

}  // namespace

TEST_SUITE("schur") {

TEST_CASE("spectral resolutions") {
  const auto e = SpectralResolution::singletons(4);
  CHECK(e.labels() == std::vector<int>{-2, -1, 0, 1});
  SpectralResolution bad{3, {{0, {0, 1}}, {1, {1, 2}}}};
  CHECK_THROWS_AS(bad.validate(), Error);
  SpectralResolution gap{3, {{0, {0}}, {1, {2}}}};
  CHECK_THROWS_AS(gap.validate(), Error);
  SpectralResolution dup{2, {{0, {0}}, {0, {1}}}};
  CHECK_THROWS_AS(dup.validate(), Error);
}

TEST_CASE("symbol matrix uses label differences") {
  SchurData d = sample_data();
  const SpectralResolution e{3, {{0, {0, 2}}, {1, {1}}}};
  const auto W = schur_symbol_matrix(d, e);
  CHECK(W(0, 2) == cplx(1.0));     // same block
  CHECK(W(1, 0) == cplx(-0.75));   // 1 - 0
  CHECK(W(0, 1) == cplx(0.0));     // -1 is not in the support
  d.f = {{0, 0}, {1, 3}};
  const auto W2 = schur_symbol_matrix(d, e);
  CHECK(W2(1, 0) == cplx(0, 0.25));  // f(1) - f(0) = 3
  d.f = {{0, 0}};
  CHECK_THROWS_AS((void)schur_symbol_matrix(d, e), Error);
}

TEST_CASE("cm constant") {
  const std::map<int, cplx> m{{0, 1.0}, {4, 0.5}, {-9, 0.1}};
  // max(1, (1 + 4^{1/2}) 0.5, (1 + 3) 0.1) = 1.5
  CHECK(cm_constant(m, 2.0) == Approx(1.5));
  CHECK(cm_constant(m, kInf) == Approx(2.0));
  CHECK_THROWS_AS((void)cm_constant(m, 0.5), Error);
}

TEST_CASE("a = 2 norm is the largest entry") {
  const auto e = SpectralResolution::singletons(6);
  const SchurData d = sample_data();
  const auto W = schur_symbol_matrix(d, e);
  const auto r = schur_norm_search(d, e, 2.0, quick());
  CHECK(r.summary.lower_bound == Approx(W.cwiseAbs().maxCoeff()).epsilon(1e-9));
}

TEST_CASE("pinching is contractive with norm one") {
  SchurData d;
  d.m = {{0, 1.0}};
  const SpectralResolution e{5, {{0, {0, 3}}, {1, {1}}, {2, {2, 4}}}};
  for (double a : {1.25, 2.0, 4.0}) CHECK(schur_norm_search(d, e, a, quick()).summary.lower_bound == Approx(1.0).epsilon(1e-9));
}

TEST_CASE("adjoint identities") {
  Rng rng(12);
  const auto e = SpectralResolution::singletons(5);
  const SchurData d = sample_data();
  const auto v = test::random_matrix(rng, 5, 5), w = test::random_matrix(rng, 5, 5);
  const auto W = schur_symbol_matrix(d, e);
  // tr(M(v) w^*) = tr(v (conj(W) o w)^*).
  const cplx lhs = (schur_multiply(d, e, v) * w.adjoint()).trace();
  const cplx rhs = (v * W.conjugate().cwiseProduct(w).adjoint()).trace();
  CHECK(std::abs(lhs - rhs) < 1e-12);
  // The reflected conjugate symbol implements v -> M(v^*)^*.
  const auto r = reflect_conjugate(d);
  CHECK((schur_multiply(r, e, v) - schur_multiply(d, e, v.adjoint()).adjoint()).norm() < 1e-13);
  // ... and has the same S^a norm.
  const double a = schur_norm_search(d, e, 1.5, quick()).summary.lower_bound;
  const double b = schur_norm_search(r, e, 1.5, quick()).summary.lower_bound;
  CHECK(a == Approx(b).epsilon(1e-6));
}

TEST_CASE("norm search rejects boundary exponents") {
  const auto e = SpectralResolution::singletons(3);
  CHECK_THROWS_AS((void)schur_norm_search(sample_data(), e, 1.0, quick()), Error);
  CHECK_THROWS_AS((void)schur_norm_search(sample_data(), e, kInf, quick()), Error);
}

TEST_CASE("JSON round trip") {
  SchurData d = sample_data();
  d.f = {{0, 2}, {1, -1}};
  d.r = kInf;
  const auto back = schur_data_from_json(schur_data_to_json(d));
  CHECK(back.m == d.m);
  CHECK(back.f == d.f);
  CHECK(back.r == kInf);
  const SpectralResolution e{3, {{5, {0, 2}}, {-1, {1}}}};
  const auto eb = resolution_from_json(resolution_to_json(e));
  CHECK(eb.labels() == e.labels());
  CHECK(resolution_from_json({{"n", 4}}).labels() == SpectralResolution::singletons(4).labels());
  CHECK_THROWS_AS((void)schur_data_from_json({{"m", {{"x", 1.0}}}}), Error);
  CHECK_THROWS_AS((void)resolution_from_json({{"n", 2}, {"blocks", {{{"label", 0}, {"indices", {0}}}}}}), Error);
}

}  // TEST_SUITE
