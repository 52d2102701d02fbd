#pragma once

// Lower-bound estimators: L^p -> L^q operator norms by nonlinear power
// iteration, gamma/R-bounds of operator families, type/cotype constants and
// Fourier-type constants. Every estimate is a best-so-far maximum over
// deterministic, seeded tasks.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "mlab/multiplier.hpp"

namespace mlab {

struct ProbeConfig {
  std::uint64_t master_seed = 0;
  int trials = 10000;
  int tuple_len = 4;
  int ascent_iters = 200;
  int restarts = 8;

  /// Throws Config for nonpositive counts.
  void validate() const;
};

nlohmann::json probe_config_to_json(const ProbeConfig& c);
/// Missing keys keep the values of `defaults`; unknown keys are a Config error.
ProbeConfig probe_config_from_json(const nlohmann::json& j, ProbeConfig defaults = {});

struct SearchSummary {
  double lower_bound = 0.0;
  /// The restart that produced the bound stopped on relative change <= 1e-10.
  bool converged = false;
  int discarded = 0;
  int iterations = 0;
  std::vector<double> restart_best;
  std::string witness_digest;

  nlohmann::json to_json() const;
};

struct TorusSearch {
  SearchSummary summary;
  std::optional<TrigPolynomial> witness;
};

struct LineSearch {
  SearchSummary summary;
  std::optional<GridFunction> witness;
};

/// Seeds are tried before the random restarts; the best few are iterated.
/// Single-mode inputs along the top singular vector of every m_k are always
/// among the seeds.
TorusSearch norm_search(const TorusMultiplier& T, double p, double q, const ProbeConfig& cfg,
                        const std::vector<TrigPolynomial>& seeds = {});
LineSearch norm_search(const LineMultiplier& T, double p, double q, const ProbeConfig& cfg,
                       const std::vector<GridFunction>& seeds = {});

/// Norm of the transform L^p(R^d; X) -> L^{p'}(R^d; X) on `grid`, p in [1, 2].
LineSearch fourier_constant_lower_bound(const VectorModel& model, double p, const GridSpec& grid,
                                        const ProbeConfig& cfg);

struct OperatorFamily {
  std::vector<OperatorMatrix> members;
  std::vector<std::string> labels;

  /// Nonempty with shared models; labels empty or one per member.
  void validate() const;
};

/// One tuple (T_{k_j}, x_j) used to seed the family estimators.
struct FamilyTuple {
  std::vector<std::size_t> members;
  std::vector<Eigen::VectorXcd> vectors;
};

struct FamilyEstimate {
  double lower_bound = 0.0;
  double std_error = 0.0;
  /// Largest member operator norm (singleton tuples).
  double singleton_max = 0.0;
  std::vector<double> restart_best;
  /// Ratio of each seed tuple before ascent (0 when degenerate).
  std::vector<double> seed_values;
  FamilyTuple best;
  std::string witness_digest;
  int skipped = 0;

  nlohmann::json to_json() const;
};

FamilyEstimate gamma_bound_estimate(const OperatorFamily& F, const ProbeConfig& cfg,
                                    const std::vector<FamilyTuple>& seeds = {});
/// The same estimator with independent uniform unimodular signs.
FamilyEstimate rademacher_bound_estimate(const OperatorFamily& F, const ProbeConfig& cfg,
                                         const std::vector<FamilyTuple>& seeds = {});

/// {|xi_i|^sigma m(xi_i)}; xi samples must be nonzero.
OperatorFamily weighted_symbol_family(const Symbol& m, double sigma, const std::vector<Xi>& xi_samples, int d = 1);

/// Gaussian type-p ratio (E|sum g_k x_k|^2)^{1/2} / (sum |x_k|^p)^{1/p}, p in [1, 2].
FamilyEstimate type_constant_estimate(const VectorModel& model, double p, const ProbeConfig& cfg);
/// Cotype-q ratio (sum |x_k|^q)^{1/q} / (E|sum g_k x_k|^2)^{1/2}, q in [2, inf].
FamilyEstimate cotype_constant_estimate(const VectorModel& model, double q, const ProbeConfig& cfg);

}  // namespace mlab
