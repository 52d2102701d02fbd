#pragma once

#include <cmath>

#include "mlab/rng.hpp"
#include "mlab/spaces.hpp"

namespace mlab::test {

inline Eigen::VectorXcd random_vector(Rng& rng, std::size_t n) {
  Eigen::VectorXcd v(static_cast<Eigen::Index>(n));
  for (auto& z : v) z = rng.complex_gaussian();
  return v;
}

inline Eigen::MatrixXcd random_matrix(Rng& rng, std::size_t rows, std::size_t cols) {
  Eigen::MatrixXcd m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  for (Eigen::Index j = 0; j < m.cols(); ++j)
    for (Eigen::Index i = 0; i < m.rows(); ++i) m(i, j) = rng.complex_gaussian();
  return m;
}

inline bool rel_close(double a, double b, double tol) { return std::abs(a - b) <= tol * std::max(std::abs(b), 1e-300); }

}  // namespace mlab::test
