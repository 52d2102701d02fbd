#include <doctest.h>

#include <numbers>
#include <set>

#include "helpers.hpp"
#include "mlab/fft.hpp"
#include "mlab/parallel.hpp"
#include "mlab/rng.hpp"

using namespace mlab;
using doctest::Approx;

TEST_SUITE("rng_fft") {

TEST_CASE("splitmix64 reference value") {
  CHECK(splitmix64(0) == 0xE220A8397B1DCDAFULL);
  CHECK(child_seed(0, 0) == splitmix64(0x9E3779B97F4A7C15ULL));
}

TEST_CASE("child streams are distinct and reproducible") {
  std::set<std::uint64_t> seen;
  for (std::uint64_t t = 0; t < 1000; ++t) seen.insert(child_seed(42, t));
  CHECK(seen.size() == 1000);
  Rng a(child_seed(42, 7)), b(child_seed(42, 7));
  for (int i = 0; i < 100; ++i) CHECK(a.next() == b.next());
}

TEST_CASE("complex Gaussians have unit second moment") {
  Rng rng(1);
  const int n = 200000;
  double m2 = 0.0, m1 = 0.0;
  cplx mean{};
  for (int i = 0; i < n; ++i) {
    const cplx g = rng.complex_gaussian();
    m2 += std::norm(g);
    m1 += std::abs(g);
    mean += g;
  }
  CHECK(m2 / n == Approx(1.0).epsilon(0.01));
  CHECK(m1 / n == Approx(std::sqrt(std::numbers::pi) / 2).epsilon(0.01));
  CHECK(std::abs(mean / double(n)) < 0.01);
}

TEST_CASE("unimodular draws and bounded indices") {
  Rng rng(2);
  for (int i = 0; i < 1000; ++i) {
    CHECK(std::abs(rng.unimodular()) == Approx(1.0).epsilon(1e-14));
    CHECK(rng.index(7) < 7);
    const double u = rng.uniform();
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
  }
}

TEST_CASE("fft matches the direct sum and inverts") {
  Rng rng(3);
  const std::size_t n = 24;
  std::vector<cplx> x(n);
  for (auto& z : x) z = rng.complex_gaussian();
  std::vector<cplx> y = x;
  fft(y, -1);
  for (std::size_t k = 0; k < n; ++k) {
    cplx s{};
    for (std::size_t j = 0; j < n; ++j) s += x[j] * std::polar(1.0, -2 * std::numbers::pi * double(j * k) / double(n));
    CHECK(std::abs(y[k] - s) < 1e-12);
  }
  fft(y, +1);
  for (std::size_t j = 0; j < n; ++j) CHECK(std::abs(y[j] / double(n) - x[j]) < 1e-14);
}

TEST_CASE("2-d fft is separable") {
  const std::size_t n0 = 4, n1 = 6;
  std::vector<cplx> a(n0 * n1, 0.0);
  a[1 * n1 + 2] = 1.0;  // delta at (1, 2)
  fft_2d(a, n0, n1, -1);
  for (std::size_t i = 0; i < n0; ++i)
    for (std::size_t j = 0; j < n1; ++j) {
      const cplx e = std::polar(1.0, -2 * std::numbers::pi * (double(i) / n0 + 2.0 * double(j) / n1));
      CHECK(std::abs(a[i * n1 + j] - e) < 1e-14);
    }
}

TEST_CASE("parallel_for propagates exceptions and covers every index") {
  std::vector<int> hits(100, 0);
  parallel_for(hits.size(), [&](std::size_t i) { hits[i] += 1; }, 4);
  for (int h : hits) CHECK(h == 1);
  CHECK_THROWS(parallel_for(10, [](std::size_t i) { if (i == 3) throw std::runtime_error("x"); }, 3));
  // Nested calls run serially inside workers.
  std::vector<int> inner(16, 0);
  parallel_for(4, [&](std::size_t i) {
    parallel_for(4, [&](std::size_t j) { inner[i * 4 + j] = detail::in_parallel_region ? 1 : 2; }, 4);
  }, 2);
  for (int v : inner) CHECK(v == 1);
}

}  // TEST_SUITE
