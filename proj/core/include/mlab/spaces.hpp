#pragma once

// Finite-dimensional vector models: scalars, l^u_n, Schatten classes S^p
// on n x n matrices and Hilbert spaces l^2_n. Every other part of the library
// evaluates norms and duality maps through VectorModel.

#include <complex>
#include <cstddef>
#include <limits>
#include <span>
#include <string>

#include <Eigen/Dense>

namespace mlab {

using cplx = std::complex<double>;

/// The exponent value used for u = infinity and p = infinity.
inline constexpr double kInf = std::numeric_limits<double>::infinity();

inline bool is_infinite(double p) noexcept { return p == kInf; }

/// Hoelder conjugate: 1/p + 1/p' = 1, with 1 <-> infinity.
double dual_exponent(double p);

enum class ModelKind { Scalar, Sequence, Schatten, Hilbert };

class VectorModel {
 public:
  static VectorModel scalar();
  static VectorModel sequence(double u, std::size_t n);
  static VectorModel schatten(double p, std::size_t side);
  static VectorModel hilbert(std::size_t n);

  ModelKind kind() const noexcept { return kind_; }
  /// Norm exponent; 2 for Scalar and Hilbert models.
  double exponent() const noexcept { return exponent_; }
  /// n for l^u_n and Hilbert(n); matrix side for Schatten; 1 for Scalar.
  std::size_t side() const noexcept { return side_; }
  /// Number of complex entries of a vector in this model.
  std::size_t dim() const noexcept { return kind_ == ModelKind::Schatten ? side_ * side_ : side_; }

  /// Model of the dual space (l^{u'}_n, S^{p'}, the same Hilbert space).
  VectorModel dual() const;
  /// True when the norm comes from the entrywise inner product.
  bool is_hilbertian() const noexcept;

  double norm(std::span<const cplx> entries) const;
  /// Writes the unit-norm functional J(x) with Re<x, J(x)> = |x|, |J(x)|_* = 1.
  /// Throws a Degenerate error for x = 0.
  void duality_map(std::span<const cplx> entries, std::span<cplx> out) const;

  std::string describe() const;

  /// Exponents compare with a relative tolerance so that dual().dual() == *this.
  friend bool operator==(const VectorModel& a, const VectorModel& b) noexcept;

 private:
  VectorModel(ModelKind kind, double exponent, std::size_t side)
      : kind_(kind), exponent_(exponent), side_(side) {}

  ModelKind kind_;
  double exponent_;
  std::size_t side_;
};

class Vector {
 public:
  Vector(VectorModel model, Eigen::VectorXcd entries);

  static Vector zero(const VectorModel& model);
  static Vector basis(const VectorModel& model, std::size_t index);
  /// Schatten vector from an n x n matrix.
  static Vector from_matrix(const VectorModel& model, const Eigen::MatrixXcd& m);

  const VectorModel& model() const noexcept { return model_; }
  const Eigen::VectorXcd& entries() const noexcept { return entries_; }
  std::span<const cplx> span() const noexcept { return {entries_.data(), static_cast<std::size_t>(entries_.size())}; }

  /// Column-major n x n view of the entries (Schatten models).
  Eigen::MatrixXcd as_matrix() const;

  Vector operator*(cplx s) const { return {model_, entries_ * s}; }
  Vector operator+(const Vector& other) const;
  Vector operator-(const Vector& other) const;

 private:
  VectorModel model_;
  Eigen::VectorXcd entries_;
};

double vector_norm(const Vector& x);
/// Norming functional of x, expressed in the dual model.
Vector duality_map(const Vector& x);
/// Sesquilinear pairing sum_i x_i conj(y_i) (= tr(x y^*) for matrices).
cplx pairing(const Vector& x, const Vector& y);
cplx pairing(std::span<const cplx> x, std::span<const cplx> y);

/// Bounded linear map between two models, stored as a dense
/// (codomain dim) x (domain dim) matrix acting on the flattened entries.
class OperatorMatrix {
 public:
  OperatorMatrix(VectorModel domain, VectorModel codomain, Eigen::MatrixXcd entries);

  static OperatorMatrix identity(const VectorModel& model);
  static OperatorMatrix zero(const VectorModel& domain, const VectorModel& codomain);
  static OperatorMatrix scalar(const VectorModel& model, cplx value);
  static OperatorMatrix diagonal(const VectorModel& model, const Eigen::VectorXcd& diag);
  /// S_k e_j = e_{j+k}; basis vectors shifted past the last index are dropped.
  static OperatorMatrix shift(const VectorModel& model, std::size_t k);

  const VectorModel& domain() const noexcept { return domain_; }
  const VectorModel& codomain() const noexcept { return codomain_; }
  const Eigen::MatrixXcd& matrix() const noexcept { return entries_; }

  /// Banach-space adjoint, acting from codomain.dual() to domain.dual().
  OperatorMatrix adjoint() const;

  OperatorMatrix operator*(cplx s) const { return {domain_, codomain_, entries_ * s}; }
  OperatorMatrix operator+(const OperatorMatrix& other) const;
  /// Composition (*this) o rhs.
  OperatorMatrix compose(const OperatorMatrix& rhs) const;

 private:
  VectorModel domain_;
  VectorModel codomain_;
  Eigen::MatrixXcd entries_;
};

Vector apply_operator(const OperatorMatrix& t, const Vector& x);

struct OperatorNorm {
  double value = 0.0;
  bool exact = false;  // false: nonlinear power-iteration lower bound
};

/// Exact for Hilbertian pairs, l^1 domains and l^infinity codomains;
/// a power-iteration lower bound otherwise.
OperatorNorm operator_norm(const OperatorMatrix& t);

/// Singular values of a square matrix in decreasing order.
Eigen::VectorXd singular_values(const Eigen::MatrixXcd& m);

}  // namespace mlab
