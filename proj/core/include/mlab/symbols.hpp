#pragma once

// Symbols xi -> m(xi) in L(X, Y) and the symbol-side quantities: L^r and
// weak-L^r norms of |m(.)|, weighted uniform bounds, cube averages and
// sampled kernel positivity.

#include <array>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "mlab/signal.hpp"
#include "mlab/spaces.hpp"

namespace mlab {

/// A frequency point; only the first d entries are meaningful.
using Xi = std::array<double, 2>;
/// Multi-index of a partial derivative.
using MultiIndex = std::array<int, 2>;

class Symbol {
 public:
  Symbol(VectorModel domain, VectorModel codomain) : domain_(domain), codomain_(codomain) {}
  virtual ~Symbol() = default;

  const VectorModel& domain() const noexcept { return domain_; }
  const VectorModel& codomain() const noexcept { return codomain_; }

  virtual std::string name() const = 0;
  /// Config form, e.g. {"kind": "riesz", "s": 0.5}.
  virtual nlohmann::json spec() const = 0;
  /// The dimension the symbol is tied to, if any.
  virtual std::optional<int> fixed_dimension() const { return std::nullopt; }

  /// Scalar symbols act as multiples of the identity.
  virtual bool is_scalar() const { return false; }
  virtual cplx scalar(const Xi& xi, int d) const;

  virtual OperatorMatrix eval(const Xi& xi, int d) const;
  /// out = m(xi) in; out must be zeroed by the caller's choice of size only.
  virtual void apply(const Xi& xi, int d, std::span<const cplx> in, std::span<cplx> out) const;
  /// out = m(xi)^* in (conjugate transpose of the matrix).
  virtual void apply_adjoint(const Xi& xi, int d, std::span<const cplx> in, std::span<cplx> out) const;
  /// Matrix entry (row in codomain, col in domain).
  virtual cplx entry(const Xi& xi, int d, std::size_t row, std::size_t col) const;
  /// |m(xi)|_{L(X,Y)}; exact for the built-in symbols.
  virtual double op_norm(const Xi& xi, int d) const;
  /// Output components that can be nonzero given the nonzero input components.
  virtual std::vector<bool> reachable(const std::vector<bool>& input) const;

  virtual std::optional<double> homogeneity() const { return std::nullopt; }
  virtual bool singular_at_zero() const { return false; }
  /// Closed-form derivatives are available for |alpha| <= this order.
  virtual int closed_form_order() const { return 0; }
  virtual OperatorMatrix derivative(const Xi& xi, int d, const MultiIndex& alpha) const;
  /// True when xi lies within tol of a point where m is not smooth (other than 0).
  virtual bool near_edge(const Xi& /*xi*/, int /*d*/, double /*tol*/) const { return false; }

 private:
  VectorModel domain_;
  VectorModel codomain_;
};

using SymbolPtr = std::shared_ptr<const Symbol>;

/// |xi|^{-s}, identity-valued on `model`.
SymbolPtr riesz_symbol(double s, VectorModel model = VectorModel::scalar());
/// (1 + |xi|^2)^{-s/2}.
SymbolPtr bessel_symbol(double s, VectorModel model = VectorModel::scalar());
/// e^{-pi |xi|^2}.
SymbolPtr gaussian_symbol(VectorModel model = VectorModel::scalar());
/// Indicator of the closed ball |xi| <= radius.
SymbolPtr indicator_symbol(double radius, VectorModel model = VectorModel::scalar());
SymbolPtr constant_symbol(cplx value, VectorModel model = VectorModel::scalar());
/// c * m.
SymbolPtr scaled_symbol(SymbolPtr base, cplx c);
/// Scalar symbol given by a function of (xi, d); metadata is declared, not inferred.
SymbolPtr function_symbol(std::string name, std::function<cplx(const Xi&, int)> fn,
                          VectorModel model = VectorModel::scalar(), std::optional<double> homogeneity = std::nullopt,
                          bool singular_at_zero = false);

/// sum_{k=1}^{n_terms} c_k 1_{(k-1,k]}(xi) S_k on l^u_dim, c_k = k^{-alpha} log(k+1)^{-2}.
SymbolPtr shift_symbol(double alpha, int n_terms, std::size_t dim, double u);
double shift_coefficient(double alpha, int k);

/// Piecewise constant: value m_k on the cube a([0,1)^d + k); zero elsewhere.
SymbolPtr cube_step_symbol(double a, int d, std::map<MultiIndex, OperatorMatrix> coeffs);

/// Builds a symbol from its config form; `model` is used by scalar symbols.
SymbolPtr symbol_from_json(const nlohmann::json& spec, VectorModel model = VectorModel::scalar());

/// Symmetric lattice xi = j * step with |j step|_inf <= radius.
struct FrequencyLattice {
  int d = 1;
  double step = 1.0 / 64.0;
  double radius = 64.0;

  long half_count() const;
  std::size_t size() const;
  Xi node(std::size_t i) const;
  double cell() const { return d == 1 ? step : step * step; }
};

/// (sum_xi |m(xi)|^r cell)^{1/r} over the lattice, sup for r = inf. The origin
/// is skipped for singular symbols; a declared homogeneity -s with r s >= d
/// makes the integral diverge at 0 and returns +inf.
double lr_symbol_norm(const Symbol& m, double r, const FrequencyLattice& lattice);
/// Weak-L^r norm of |m(.)| over the lattice (origin skipped when singular).
double weak_lr_symbol_norm(const Symbol& m, double r, const FrequencyLattice& lattice);
/// sup_xi |xi|^sigma |m(xi)| over the nonzero lattice nodes.
double uniform_weighted_bound(const Symbol& m, double sigma, const FrequencyLattice& lattice);

struct SymbolCoefficients {
  int d = 1;
  int n = 0;
  double a = 1.0;
  /// Indexed like TrigPolynomial modes.
  std::vector<OperatorMatrix> m;
  std::vector<std::string> warnings;

  std::size_t index(MultiIndex k) const;
  MultiIndex mode(std::size_t i) const;
  const OperatorMatrix& at(MultiIndex k) const { return m.at(index(k)); }
};

/// m_k = a^{-d} int_{[0,a]^d} m(t + k a) dt by the midpoint rule with `order`
/// nodes per axis; nodes where m is not finite are dropped with a warning.
SymbolCoefficients averaged_coefficients(const Symbol& m, double a, int n, int order, int d = 1);

struct KernelReport {
  double min_real = 0.0;
  double max_abs_imag = 0.0;
  double max_abs = 0.0;
  double tolerance = 0.0;
  bool positive = false;
  std::string label = "sampled";
};

/// Samples K = F^{-1} m on the grid (each matrix entry for operator symbols).
/// For singular symbols the origin node carries the cell average of m.
KernelReport kernel_positivity_check(const Symbol& m, const GridSpec& grid);

/// Checks m(lambda xi) = lambda^sigma m(xi) at the given pairs; returns the
/// largest relative deviation of the operator norm.
double homogeneity_defect(const Symbol& m, int d, const std::vector<std::pair<Xi, double>>& samples);

}  // namespace mlab
