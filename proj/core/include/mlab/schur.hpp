#pragma once

// Schur multipliers M v = sum_{j,k} m_{f(j)-f(k)} e_j v e_k on n x n matrices,
// with e a finite spectral resolution given by labeled index blocks.

#include <map>
#include <optional>
#include <vector>

#include <nlohmann/json.hpp>

#include "mlab/probes.hpp"

namespace mlab {

struct SpectralBlock {
  int label = 0;
  std::vector<std::size_t> indices;
};

struct SpectralResolution {
  std::size_t n = 0;
  std::vector<SpectralBlock> blocks;

  /// Singleton blocks {i} labeled i - n/2.
  static SpectralResolution singletons(std::size_t n);
  /// Throws Structural unless the blocks partition {0, ..., n-1} with distinct labels.
  void validate() const;
  /// Block label of every index.
  std::vector<int> labels() const;
};

struct SchurData {
  /// Finitely supported coefficients; missing keys are zero.
  std::map<int, cplx> m;
  /// Label map; empty means the identity.
  std::map<int, int> f;
  double r = 2.0;

  cplx coefficient(int j) const;
  int f_of(int label) const;
};

/// sup_j (1 + |j|^{1/r}) |m_j|.
double cm_constant(const std::map<int, cplx>& m, double r);

/// The n x n matrix of coefficients m_{f(j)-f(k)} seen by the index pair.
Eigen::MatrixXcd schur_symbol_matrix(const SchurData& data, const SpectralResolution& e);
Eigen::MatrixXcd schur_multiply(const SchurData& data, const SpectralResolution& e, const Eigen::MatrixXcd& v);

/// m_j -> conj(m_{-j}).
SchurData reflect_conjugate(const SchurData& data);

struct SchurSearch {
  SearchSummary summary;
  std::optional<Eigen::MatrixXcd> witness;
};

/// Lower bound for |M|_{L(S^a)}, a in (1, inf); single-entry matrices are seeds.
SchurSearch schur_norm_search(const SchurData& data, const SpectralResolution& e, double a, const ProbeConfig& cfg);

nlohmann::json schur_data_to_json(const SchurData& d);
SchurData schur_data_from_json(const nlohmann::json& j);
nlohmann::json resolution_to_json(const SpectralResolution& e);
SpectralResolution resolution_from_json(const nlohmann::json& j);

}  // namespace mlab
