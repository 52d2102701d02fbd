#pragma once

// T_m on the torus (coefficientwise, exact) and on the line/plane
// (forward transform, per-frequency operator, inverse transform).

#include <vector>

#include "mlab/signal.hpp"
#include "mlab/symbols.hpp"

namespace mlab {

class TorusMultiplier {
 public:
  explicit TorusMultiplier(SymbolCoefficients coeffs);

  const SymbolCoefficients& coeffs() const noexcept { return coeffs_; }
  const VectorModel& domain() const noexcept { return coeffs_.m.front().domain(); }
  const VectorModel& codomain() const noexcept { return coeffs_.m.front().codomain(); }
  int n() const noexcept { return coeffs_.n; }
  int d() const noexcept { return coeffs_.d; }

  /// Identity-valued coefficients (scalar values) on `model`.
  static TorusMultiplier scalar(int d, const std::vector<cplx>& values, VectorModel model = VectorModel::scalar());

 private:
  SymbolCoefficients coeffs_;
};

/// y_k = m_k x_k for |k| <= radius(f); radius(f) may not exceed radius(M).
TrigPolynomial apply_torus(const TorusMultiplier& M, const TrigPolynomial& f);
/// y_k = m_k^* x_k, mapping polynomials over codomain.dual() to domain.dual().
TrigPolynomial apply_torus_adjoint(const TorusMultiplier& M, const TrigPolynomial& g);

struct LineMultiplier {
  SymbolPtr symbol;
  GridSpec grid;
};

struct LineApplyInfo {
  /// Fraction of |f^|^2 energy beyond half the Nyquist radius.
  double out_of_band_fraction = 0.0;
  bool warning = false;
};

GridFunction apply_line(const LineMultiplier& M, const GridFunction& f, LineApplyInfo* info = nullptr);
/// F^{-1} m^* F, the adjoint for the pairing cell * sum_i <f(t_i), g(t_i)>.
GridFunction apply_line_adjoint(const LineMultiplier& M, const GridFunction& g);
/// |T_m f(t_i)| for every grid point without materializing T_m f: output
/// components are produced and reduced one at a time (entrywise codomains).
std::vector<double> apply_line_pointwise_norms(const LineMultiplier& M, const GridFunction& f);

double out_of_band_fraction(const GridFunction& fhat);

/// |F^{-1}(|xi|^s f^)|_p; s < 0 needs f^(0) = 0 (relative 1e-8).
double homogeneous_seminorm(const GridFunction& f, double s, double p);

/// |T f|_q / |f|_p; throws Degenerate for f = 0.
double ratio(const TorusMultiplier& T, const TrigPolynomial& f, double p, double q);
double ratio(const LineMultiplier& T, const GridFunction& f, double p, double q);

}  // namespace mlab
