#pragma once

// Weighted annulus integrals for the (M1)/(M2) symbol conditions:
//   R^{|a| + d/r - d/rho} ( int_{R <= |xi| < 2R} |d^a m(xi) x|^rho dxi )^{1/rho}
// with the supremum over unit x taken on a probe set, and the dual-side
// variant using m(xi)^* on unit y in the codomain's dual.

#include <cstdint>
#include <vector>

#include "mlab/symbols.hpp"

namespace mlab {

struct MihlinOptions {
  /// Use Richardson-extrapolated differences even when closed forms exist.
  bool numerical = false;
  int random_probes = 32;
  std::uint64_t seed = 0;
  int nodes_1d = 256;  // per side of the annulus
  int nodes_2d = 64;   // radial x angular
  unsigned threads = 0;
};

struct MihlinEntry {
  MultiIndex alpha{0, 0};
  double R = 1.0;
  double m1 = 0.0;
  double m2 = 0.0;
  bool numerical = false;
  /// Step-halving disagreement above 1e-4 at some node.
  bool flagged = false;
  long excluded_nodes = 0;
};

struct MihlinReport {
  int d = 1;
  double r = 2.0;
  double rho = 2.0;
  std::vector<MihlinEntry> entries;
  double M1 = 0.0;
  double M2 = 0.0;
  std::vector<std::string> notes;
};

MihlinReport mihlin_annulus_report(const Symbol& m, int d, double r, double rho, int n_derivs,
                                   const std::vector<double>& R_list, const MihlinOptions& options = {});

/// max over alpha of (max_R - min_R) / max_R for the (M1) entries.
double mihlin_R_spread(const MihlinReport& report);

/// Richardson-extrapolated derivative d^alpha m(xi); sets `unstable` when the
/// two extrapolants differ by more than 1e-4 relative.
Eigen::MatrixXcd numerical_derivative(const Symbol& m, const Xi& xi, int d, const MultiIndex& alpha, bool& unstable);

}  // namespace mlab
