#pragma once

// Generic nonlinear power iteration shared by the torus, line, Fourier and
// Schur norm searches. Each restart or seed is an independent task with its
// own child seed; results are reduced in task order.

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <optional>
#include <vector>

#include "mlab/error.hpp"
#include "mlab/parallel.hpp"
#include "mlab/probes.hpp"
#include "mlab/rng.hpp"
#include "mlab/serialize.hpp"

namespace mlab::detail {

template <class Elem>
struct NormProblem {
  /// |T x|_q / |x|_p together with the next iterate.
  std::function<std::pair<double, Elem>(const Elem&)> iterate;
  std::function<double(const Elem&)> ratio;
  std::function<Elem(Rng&)> random_start;
  std::function<std::uint64_t(const Elem&)> digest;
};

template <class Elem>
struct SearchOutcome {
  SearchSummary summary;
  std::optional<Elem> witness;
};

template <class Elem>
struct TaskResult {
  double best = -1.0;
  std::optional<Elem> witness;
  bool converged = false;
  bool discarded = false;
  int iterations = 0;
};

inline bool degenerate_ratio(double r) { return !std::isfinite(r); }

template <class Elem>
TaskResult<Elem> power_iterate(const NormProblem<Elem>& P, Elem x, int iters) {
  TaskResult<Elem> out;
  double prev = -1.0;
  try {
    for (int it = 0; it < iters; ++it) {
      auto [r, next] = P.iterate(x);
      ++out.iterations;
      if (degenerate_ratio(r)) {
        out.discarded = out.best < 0.0;
        return out;
      }
      if (r > out.best) {
        out.best = r;
        out.witness = x;
      }
      if (prev >= 0.0 && std::abs(r - prev) <= 1e-10 * std::max(r, 1e-300)) {
        out.converged = true;
        break;
      }
      prev = r;
      x = std::move(next);
    }
    if (!out.converged) {
      // The last iterate has not been scored yet.
      const double r = P.ratio(x);
      if (!degenerate_ratio(r) && r > out.best) {
        out.best = r;
        out.witness = x;
      }
    }
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::Degenerate) throw;
    out.discarded = out.best < 0.0;
  }
  return out;
}

/// Evaluates every seed, iterates the best max(restarts, 1) of them and runs
/// cfg.restarts random restarts.
template <class Elem>
SearchOutcome<Elem> run_search(const NormProblem<Elem>& P, const ProbeConfig& cfg, const std::vector<Elem>& seeds) {
  cfg.validate();
  std::vector<double> seed_ratio(seeds.size(), -1.0);
  parallel_for(seeds.size(), [&](std::size_t i) {
    try {
      const double r = P.ratio(seeds[i]);
      seed_ratio[i] = degenerate_ratio(r) ? -1.0 : r;
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::Degenerate) throw;
    }
  });
  std::vector<std::size_t> order(seeds.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return seed_ratio[a] > seed_ratio[b]; });
  const std::size_t iterated = std::min<std::size_t>(seeds.size(), static_cast<std::size_t>(std::max(cfg.restarts, 1)));

  const std::size_t restarts = static_cast<std::size_t>(cfg.restarts);
  std::vector<TaskResult<Elem>> tasks(restarts + iterated);
  parallel_for(tasks.size(), [&](std::size_t t) {
    if (t < restarts) {
      Rng rng(child_seed(cfg.master_seed, t));
      tasks[t] = power_iterate(P, P.random_start(rng), cfg.ascent_iters);
    } else {
      const std::size_t s = order[t - restarts];
      if (seed_ratio[s] < 0.0) {
        tasks[t].discarded = true;
        return;
      }
      tasks[t] = power_iterate(P, seeds[s], cfg.ascent_iters);
      if (seed_ratio[s] > tasks[t].best) {
        tasks[t].best = seed_ratio[s];
        tasks[t].witness = seeds[s];
      }
    }
  });

  SearchOutcome<Elem> out;
  double best = -1.0;
  for (std::size_t t = 0; t < tasks.size(); ++t) {
    auto& r = tasks[t];
    out.summary.iterations += r.iterations;
    if (r.discarded) ++out.summary.discarded;
    out.summary.restart_best.push_back(std::max(r.best, 0.0));
    if (r.best > best) {
      best = r.best;
      out.witness = r.witness;
      out.summary.converged = r.converged;
    }
  }
  // Seeds that were scored but not iterated still count.
  for (std::size_t k = iterated; k < order.size(); ++k) {
    const std::size_t s = order[k];
    if (seed_ratio[s] > best) {
      best = seed_ratio[s];
      out.witness = seeds[s];
      out.summary.converged = false;
    }
  }
  out.summary.lower_bound = std::max(best, 0.0);
  if (out.witness) out.summary.witness_digest = hex_digest(P.digest(*out.witness));
  return out;
}

}  // namespace mlab::detail
