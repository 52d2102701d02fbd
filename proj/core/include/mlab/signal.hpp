#pragma once

// Discretized function spaces on R^d (uniform grids) and T^d (trigonometric
// polynomials), the Fourier transform with the e^{-2 pi i x.xi} convention,
// Bochner and weak norms, and the explicit witness functions.
//
// Grid convention: t_i = -L + i h, h = 2L/N, i in [0, N) per axis; the dual
// grid is xi_j = (j - N/2) / (2L), which is again a GridSpec with half-width
// N/(4L). Multi-indices are row-major with axis 0 outermost.

#include <array>
#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "mlab/spaces.hpp"

namespace mlab {

struct GridSpec {
  int d = 1;
  double L = 64.0;
  std::size_t N = 65536;

  double step() const noexcept { return 2.0 * L / static_cast<double>(N); }
  double cell() const noexcept;
  std::size_t size() const noexcept { return d == 1 ? N : N * N; }
  /// Coordinate of index i along one axis.
  double coord(std::size_t i) const noexcept { return -L + static_cast<double>(i) * step(); }
  std::array<double, 2> point(std::size_t linear) const noexcept;
  /// Frequency grid of the transform.
  GridSpec dual() const noexcept { return {d, static_cast<double>(N) / (4.0 * L), N}; }
  /// Throws Domain for d outside {1, 2}, odd N or L <= 0.
  void validate() const;

  friend bool operator==(const GridSpec&, const GridSpec&) = default;
};

/// Samples of f: [-L, L)^d -> X stored per component; a component that was
/// never written is identically zero and costs no memory.
class GridFunction {
 public:
  GridFunction(GridSpec grid, VectorModel model);

  const GridSpec& grid() const noexcept { return grid_; }
  const VectorModel& model() const noexcept { return model_; }

  bool has_component(std::size_t c) const { return !columns_.at(c).empty(); }
  /// Empty span for a zero component.
  std::span<const cplx> component(std::size_t c) const { return columns_.at(c); }
  /// Allocates the component (zero-filled) on first use.
  std::span<cplx> mutable_component(std::size_t c);
  void set_component(std::size_t c, std::vector<cplx> values);
  void clear_component(std::size_t c) { columns_.at(c).clear(); columns_.at(c).shrink_to_fit(); }

  Vector sample(std::size_t i) const;
  /// |f(t_i)|_X for every grid point.
  std::vector<double> pointwise_norms() const;

  GridFunction& operator*=(cplx s);
  GridFunction& operator+=(const GridFunction& other);

 private:
  GridSpec grid_;
  VectorModel model_;
  std::vector<std::vector<cplx>> columns_;
};

/// Sum_{|k|_inf <= n} e^{2 pi i k.t} x_k on T^d = [0,1)^d; coefficient
/// vectors are the columns of a (model dim) x (2n+1)^d matrix.
class TrigPolynomial {
 public:
  TrigPolynomial(int d, int n, VectorModel model);

  int d() const noexcept { return d_; }
  int n() const noexcept { return n_; }
  const VectorModel& model() const noexcept { return model_; }
  std::size_t modes() const noexcept { return static_cast<std::size_t>(coeffs_.cols()); }

  std::size_t mode_index(std::array<int, 2> k) const;
  std::array<int, 2> mode(std::size_t index) const;

  Eigen::MatrixXcd& coeffs() noexcept { return coeffs_; }
  const Eigen::MatrixXcd& coeffs() const noexcept { return coeffs_; }
  auto coeff(std::size_t index) { return coeffs_.col(static_cast<Eigen::Index>(index)); }
  auto coeff(std::size_t index) const { return coeffs_.col(static_cast<Eigen::Index>(index)); }

  /// f(t) for t in [0,1)^d (only the first d entries of t are used).
  Vector eval(std::array<double, 2> t) const;

 private:
  int d_;
  int n_;
  VectorModel model_;
  Eigen::MatrixXcd coeffs_;
};

/// Default quadrature resolution for a torus polynomial: the smallest power of
/// two that is >= max(8n, 16).
std::size_t torus_resolution(int n);
/// Samples on t = -1/2 + i/M (a shifted copy of the torus), returned as a
/// GridFunction over GridSpec{d, 1/2, M}. Requires M >= 2n + 1.
GridFunction sample_torus(const TrigPolynomial& f, std::size_t M = 0);
/// Fourier coefficients |k| <= n of torus samples (inverse of sample_torus on
/// polynomials, orthogonal projection otherwise).
TrigPolynomial project_torus(const GridFunction& samples, int n);

GridFunction fourier_forward(const GridFunction& f);
GridFunction fourier_inverse(const GridFunction& g);

/// L^p-type norm from pointwise norms with cell volume `cell`.
double bochner_from_norms(std::span<const double> norms, double cell, double p);
double bochner_norm(const GridFunction& f, double p);
/// Rectangle rule on torus_resolution(n) points per axis unless M is given.
double bochner_norm(const TrigPolynomial& f, double p, std::size_t M = 0);

/// Empirical weak-L^p quasi-norm max_i a_i (i cell)^{1/p} of the decreasing
/// rearrangement; ties keep index order.
double weak_norm_from_values(std::span<const double> values, double cell, double p);
double weak_norm(const GridFunction& f, double p);

/// Norming functional of f in L^{p'}(X*) with respect to the pairing
/// cell * sum_i <f(t_i), g(t_i)>. Throws Degenerate for f = 0.
GridFunction lp_duality_map(const GridFunction& f, double p);
/// Inner product cell * sum_i sum_c f_c(t_i) conj(g_c(t_i)).
cplx grid_pairing(const GridFunction& f, const GridFunction& g);

/// Closed form e^{2 pi i (k - 1/2) t} sin(pi t)/(pi t) sampled on a 1-d grid.
GridFunction phi_k(int k, const GridSpec& grid);
/// Discrete inverse transform of the indicator of (k-1, k] on the dual grid;
/// its transform is exactly that indicator.
GridFunction phi_k_band(int k, const GridSpec& grid);

enum class WitnessForm { BandExact, ClosedForm };

/// f_n = sum_{k=n+1}^{2n} phi_k e_0 in L^p(R; l^u_dim). The band-exact form
/// needs the band (n, 2n] inside the dual grid.
GridFunction witness_hormander(int n, double u, std::size_t dim, const GridSpec& grid,
                               WitnessForm form = WitnessForm::BandExact);

struct WitnessFamily {
  std::string name;
  std::function<GridFunction(int)> generator;
  double predicted_exponent = 0.0;
  double predicted_log_power = 0.0;
};

/// |h(t)| for h = inverse transform of 1_{[0,1]}, i.e. |sin(pi t)|/(pi |t|).
double sinc_modulus(double t);

struct Periodization {
  std::vector<double> t;
  std::vector<double> values;
  double sup = 0.0;
  /// Upper bound on the neglected tail after the Euler-Maclaurin correction.
  double tail_bound = 0.0;
  long terms = 0;
};

/// H(t) = sum_j |h(t + j)|^p over Z^d (product of 1-d factors for d = 2),
/// evaluated at the given 1-d points (d = 2 uses the diagonal t = (s, s)).
/// p = 1 is refused (the series diverges).
Periodization periodization_H(double p, int d, std::span<const double> t, long terms = 4096);
/// sup_t H(t), located on a fine grid of [0, 1/2] and refined by golden section.
double periodization_sup(double p, int d, long terms = 4096);

}  // namespace mlab
