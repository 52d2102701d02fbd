// Hot paths: transforms, multiplier application, norm searches, family estimates.

#include <benchmark/benchmark.h>

#include <vector>

#include "mlab/experiments.hpp"
#include "mlab/fft.hpp"
#include "mlab/multiplier.hpp"
#include "mlab/parallel.hpp"
#include "mlab/probes.hpp"
#include "mlab/rng.hpp"
#include "mlab/signal.hpp"

using namespace mlab;

namespace {

void BM_fft(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  std::vector<cplx> x(n);
  Rng rng(1);
  for (auto& z : x) z = rng.complex_gaussian();
  for (auto _ : state) {
    fft(x, -1);
    benchmark::DoNotOptimize(x.data());
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_fft)->RangeMultiplier(4)->Range(1 << 10, 1 << 20)->Complexity(benchmark::oNLogN);

void BM_apply_line_witness(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const std::size_t dim = static_cast<std::size_t>(2 * n + 1);
  const GridSpec g{1, 32.0, witness_grid_size(n, 32.0)};
  const auto f = witness_hormander(n, 1.5, dim, g);
  const LineMultiplier T{shift_symbol(0.3, 2 * n, dim, 1.5), g};
  for (auto _ : state) benchmark::DoNotOptimize(apply_line_pointwise_norms(T, f));
}
BENCHMARK(BM_apply_line_witness)->Arg(8)->Arg(32)->Arg(128)->Unit(benchmark::kMillisecond);

void BM_torus_norm_search(benchmark::State& state) {
  set_default_threads(1);
  Rng rng(2);
  std::vector<cplx> m(static_cast<std::size_t>(2 * state.range(0) + 1));
  for (auto& z : m) z = rng.complex_gaussian();
  const auto T = TorusMultiplier::scalar(1, m);
  ProbeConfig cfg;
  cfg.restarts = 2;
  cfg.ascent_iters = 50;
  for (auto _ : state) benchmark::DoNotOptimize(norm_search(T, 1.5, 3.0, cfg));
}
BENCHMARK(BM_torus_norm_search)->Arg(4)->Arg(16)->Unit(benchmark::kMillisecond);

void BM_gamma_estimate(benchmark::State& state) {
  set_default_threads(1);
  Rng rng(3);
  const auto X = VectorModel::sequence(1.0, 6);
  OperatorFamily F;
  for (int k = 0; k < 6; ++k) {
    Eigen::MatrixXcd a(6, 6);
    for (Eigen::Index j = 0; j < 6; ++j)
      for (Eigen::Index i = 0; i < 6; ++i) a(i, j) = rng.complex_gaussian();
    F.members.emplace_back(X, X, a);
  }
  ProbeConfig cfg;
  cfg.trials = static_cast<int>(state.range(0));
  cfg.restarts = 2;
  for (auto _ : state) benchmark::DoNotOptimize(gamma_bound_estimate(F, cfg).lower_bound);
}
BENCHMARK(BM_gamma_estimate)->Arg(1000)->Arg(4000)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
