#include "mlab/spaces.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "mlab/error.hpp"

namespace mlab {

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::Structural: return "structural";
    case ErrorKind::Domain: return "domain";
    case ErrorKind::Degenerate: return "degenerate-input";
    case ErrorKind::Evaluation: return "evaluation";
    case ErrorKind::Config: return "config";
  }
  return "unknown";
}

double dual_exponent(double p) {
  require(!std::isnan(p) && p >= 1.0, ErrorKind::Domain, "exponent must lie in [1, inf]");
  if (p == 1.0) return kInf;
  if (is_infinite(p)) return 1.0;
  return p / (p - 1.0);
}

namespace {

void check_exponent(double p) {
  require(!std::isnan(p) && p >= 1.0, ErrorKind::Domain, "exponent must lie in [1, inf]");
}

cplx phase(cplx z) {
  const double a = std::abs(z);
  return a == 0.0 ? cplx{0.0, 0.0} : z / a;
}

double lp_of_moduli(std::span<const double> a, double p) {
  double peak = 0.0;
  for (double v : a) peak = std::max(peak, v);
  if (peak == 0.0) return 0.0;
  if (is_infinite(p)) return peak;
  double acc = 0.0;
  if (p == 1.0) {
    for (double v : a) acc += v;
    return acc;
  }
  if (p == 2.0) {
    for (double v : a) acc += (v / peak) * (v / peak);
    return peak * std::sqrt(acc);
  }
  for (double v : a) acc += std::pow(v / peak, p);
  return peak * std::pow(acc, 1.0 / p);
}

Eigen::Map<const Eigen::MatrixXcd> matrix_view(std::span<const cplx> e, std::size_t n) {
  return {e.data(), static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n)};
}

}  // namespace

Eigen::VectorXd singular_values(const Eigen::MatrixXcd& m) {
  if (m.rows() <= 16) {
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m);
    return svd.singularValues();
  }
  Eigen::BDCSVD<Eigen::MatrixXcd> svd(m);
  return svd.singularValues();
}

bool operator==(const VectorModel& a, const VectorModel& b) noexcept {
  if (a.kind_ != b.kind_ || a.side_ != b.side_) return false;
  if (a.exponent_ == b.exponent_) return true;
  return std::abs(a.exponent_ - b.exponent_) <= 1e-12 * std::max(a.exponent_, b.exponent_);
}

VectorModel VectorModel::scalar() { return {ModelKind::Scalar, 2.0, 1}; }

VectorModel VectorModel::sequence(double u, std::size_t n) {
  check_exponent(u);
  require(n >= 1, ErrorKind::Domain, "dimension must be >= 1");
  return {ModelKind::Sequence, u, n};
}

VectorModel VectorModel::schatten(double p, std::size_t side) {
  check_exponent(p);
  require(side >= 1, ErrorKind::Domain, "matrix side must be >= 1");
  return {ModelKind::Schatten, p, side};
}

VectorModel VectorModel::hilbert(std::size_t n) {
  require(n >= 1, ErrorKind::Domain, "dimension must be >= 1");
  return {ModelKind::Hilbert, 2.0, n};
}

VectorModel VectorModel::dual() const {
  switch (kind_) {
    case ModelKind::Sequence: return sequence(dual_exponent(exponent_), side_);
    case ModelKind::Schatten: return schatten(dual_exponent(exponent_), side_);
    default: return *this;
  }
}

bool VectorModel::is_hilbertian() const noexcept {
  return kind_ == ModelKind::Scalar || kind_ == ModelKind::Hilbert || exponent_ == 2.0;
}

std::string VectorModel::describe() const {
  std::ostringstream os;
  auto exp = [&] { return is_infinite(exponent_) ? std::string("inf") : std::to_string(exponent_); };
  switch (kind_) {
    case ModelKind::Scalar: os << "C"; break;
    case ModelKind::Sequence: os << "l^" << exp() << "_" << side_; break;
    case ModelKind::Schatten: os << "S^" << exp() << "_" << side_ << "x" << side_; break;
    case ModelKind::Hilbert: os << "H_" << side_; break;
  }
  return os.str();
}

double VectorModel::norm(std::span<const cplx> e) const {
  require(e.size() == dim(), ErrorKind::Structural, "vector length does not match model " + describe());
  if (kind_ == ModelKind::Scalar) return std::abs(e[0]);
  if (kind_ == ModelKind::Schatten && exponent_ != 2.0) {
    const Eigen::VectorXd s = singular_values(matrix_view(e, side_));
    return lp_of_moduli({s.data(), static_cast<std::size_t>(s.size())}, exponent_);
  }
  // Sequence, Hilbert and the Frobenius (S^2) case are entrywise norms.
  const double p = (kind_ == ModelKind::Hilbert) ? 2.0 : exponent_;
  double peak = 0.0;
  for (const cplx& z : e) peak = std::max(peak, std::abs(z));
  if (peak == 0.0) return 0.0;
  if (is_infinite(p)) return peak;
  double acc = 0.0;
  if (p == 1.0) {
    for (const cplx& z : e) acc += std::abs(z);
    return acc;
  }
  if (p == 2.0) {
    for (const cplx& z : e) acc += std::norm(z / peak);
    return peak * std::sqrt(acc);
  }
  for (const cplx& z : e) acc += std::pow(std::abs(z) / peak, p);
  return peak * std::pow(acc, 1.0 / p);
}

void VectorModel::duality_map(std::span<const cplx> e, std::span<cplx> out) const {
  require(out.size() == e.size(), ErrorKind::Structural, "duality map output has wrong length");
  const double nx = norm(e);
  require(nx > 0.0 && std::isfinite(nx), ErrorKind::Degenerate, "duality map of the zero vector");

  if (is_hilbertian()) {
    for (std::size_t i = 0; i < e.size(); ++i) out[i] = e[i] / nx;
    return;
  }

  if (kind_ == ModelKind::Sequence) {
    const double u = exponent_;
    if (is_infinite(u)) {
      std::size_t best = 0;
      for (std::size_t i = 1; i < e.size(); ++i)
        if (std::abs(e[i]) > std::abs(e[best])) best = i;
      std::fill(out.begin(), out.end(), cplx{});
      out[best] = phase(e[best]);
      return;
    }
    if (u == 1.0) {
      for (std::size_t i = 0; i < e.size(); ++i) out[i] = phase(e[i]);
      return;
    }
    for (std::size_t i = 0; i < e.size(); ++i) out[i] = phase(e[i]) * std::pow(std::abs(e[i]) / nx, u - 1.0);
    return;
  }

  // Schatten: J = U f(Sigma) V^*.
  const auto x = matrix_view(e, side_);
  Eigen::BDCSVD<Eigen::MatrixXcd> svd(x, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const Eigen::VectorXd s = svd.singularValues();
  Eigen::VectorXd f = Eigen::VectorXd::Zero(s.size());
  const double p = exponent_;
  const double tol = s(0) * 1e-14 * static_cast<double>(side_);
  if (is_infinite(p)) {
    f(0) = 1.0;
  } else if (p == 1.0) {
    for (Eigen::Index i = 0; i < s.size(); ++i) f(i) = s(i) > tol ? 1.0 : 0.0;
  } else {
    for (Eigen::Index i = 0; i < s.size(); ++i) f(i) = std::pow(s(i) / nx, p - 1.0);
  }
  const Eigen::MatrixXcd j = svd.matrixU() * f.cast<cplx>().asDiagonal() * svd.matrixV().adjoint();
  std::copy(j.data(), j.data() + j.size(), out.begin());
}

Vector::Vector(VectorModel model, Eigen::VectorXcd entries) : model_(model), entries_(std::move(entries)) {
  require(static_cast<std::size_t>(entries_.size()) == model_.dim(), ErrorKind::Structural,
          "entries length " + std::to_string(entries_.size()) + " does not match model " + model_.describe());
}

Vector Vector::zero(const VectorModel& model) {
  return {model, Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(model.dim()))};
}

Vector Vector::basis(const VectorModel& model, std::size_t index) {
  require(index < model.dim(), ErrorKind::Structural, "basis index out of range");
  Eigen::VectorXcd e = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(model.dim()));
  e(static_cast<Eigen::Index>(index)) = 1.0;
  return {model, std::move(e)};
}

Vector Vector::from_matrix(const VectorModel& model, const Eigen::MatrixXcd& m) {
  require(model.kind() == ModelKind::Schatten, ErrorKind::Structural, "from_matrix needs a Schatten model");
  require(static_cast<std::size_t>(m.rows()) == model.side() && m.rows() == m.cols(), ErrorKind::Structural,
          "matrix shape does not match model");
  return {model, Eigen::Map<const Eigen::VectorXcd>(m.data(), m.size())};
}

Eigen::MatrixXcd Vector::as_matrix() const {
  const auto n = static_cast<Eigen::Index>(model_.side());
  if (model_.kind() != ModelKind::Schatten) return entries_;
  return Eigen::Map<const Eigen::MatrixXcd>(entries_.data(), n, n);
}

Vector Vector::operator+(const Vector& other) const {
  require(model_ == other.model_, ErrorKind::Structural, "adding vectors from different models");
  return {model_, entries_ + other.entries_};
}

Vector Vector::operator-(const Vector& other) const {
  require(model_ == other.model_, ErrorKind::Structural, "subtracting vectors from different models");
  return {model_, entries_ - other.entries_};
}

double vector_norm(const Vector& x) { return x.model().norm(x.span()); }

Vector duality_map(const Vector& x) {
  Eigen::VectorXcd out(x.entries().size());
  x.model().duality_map(x.span(), {out.data(), static_cast<std::size_t>(out.size())});
  return {x.model().dual(), std::move(out)};
}

cplx pairing(std::span<const cplx> x, std::span<const cplx> y) {
  require(x.size() == y.size(), ErrorKind::Structural, "pairing of vectors with different lengths");
  cplx acc{};
  for (std::size_t i = 0; i < x.size(); ++i) acc += x[i] * std::conj(y[i]);
  return acc;
}

cplx pairing(const Vector& x, const Vector& y) { return pairing(x.span(), y.span()); }

OperatorMatrix::OperatorMatrix(VectorModel domain, VectorModel codomain, Eigen::MatrixXcd entries)
    : domain_(domain), codomain_(codomain), entries_(std::move(entries)) {
  require(static_cast<std::size_t>(entries_.rows()) == codomain_.dim() &&
              static_cast<std::size_t>(entries_.cols()) == domain_.dim(),
          ErrorKind::Structural, "operator shape does not match (codomain dim) x (domain dim)");
}

OperatorMatrix OperatorMatrix::identity(const VectorModel& model) {
  const auto n = static_cast<Eigen::Index>(model.dim());
  return {model, model, Eigen::MatrixXcd::Identity(n, n)};
}

OperatorMatrix OperatorMatrix::zero(const VectorModel& domain, const VectorModel& codomain) {
  return {domain, codomain,
          Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(codomain.dim()), static_cast<Eigen::Index>(domain.dim()))};
}

OperatorMatrix OperatorMatrix::scalar(const VectorModel& model, cplx value) { return identity(model) * value; }

OperatorMatrix OperatorMatrix::diagonal(const VectorModel& model, const Eigen::VectorXcd& diag) {
  require(static_cast<std::size_t>(diag.size()) == model.dim(), ErrorKind::Structural, "diagonal length mismatch");
  return {model, model, diag.asDiagonal()};
}

OperatorMatrix OperatorMatrix::shift(const VectorModel& model, std::size_t k) {
  require(model.kind() != ModelKind::Schatten, ErrorKind::Structural, "shift operators act on sequence models");
  const auto n = static_cast<Eigen::Index>(model.dim());
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(n, n);
  for (Eigen::Index j = 0; j + static_cast<Eigen::Index>(k) < n; ++j) m(j + static_cast<Eigen::Index>(k), j) = 1.0;
  return {model, model, std::move(m)};
}

OperatorMatrix OperatorMatrix::adjoint() const { return {codomain_.dual(), domain_.dual(), entries_.adjoint()}; }

OperatorMatrix OperatorMatrix::operator+(const OperatorMatrix& other) const {
  require(domain_ == other.domain_ && codomain_ == other.codomain_, ErrorKind::Structural,
          "adding operators between different models");
  return {domain_, codomain_, entries_ + other.entries_};
}

OperatorMatrix OperatorMatrix::compose(const OperatorMatrix& rhs) const {
  require(rhs.codomain_ == domain_, ErrorKind::Structural, "composition of incompatible operators");
  return {rhs.domain_, codomain_, entries_ * rhs.entries_};
}

Vector apply_operator(const OperatorMatrix& t, const Vector& x) {
  require(x.model() == t.domain(), ErrorKind::Structural,
          "operator domain " + t.domain().describe() + " does not match vector model " + x.model().describe());
  return {t.codomain(), t.matrix() * x.entries()};
}

OperatorNorm operator_norm(const OperatorMatrix& t) {
  const auto& a = t.matrix();
  const VectorModel& dom = t.domain();
  const VectorModel& cod = t.codomain();
  if (a.size() == 0 || a.cwiseAbs().maxCoeff() == 0.0) return {0.0, true};

  if (dom.is_hilbertian() && cod.is_hilbertian()) {
    return {singular_values(a)(0), true};
  }
  // Extreme points of the l^1 ball are the unimodular multiples of e_j.
  if (dom.kind() == ModelKind::Sequence && dom.exponent() == 1.0) {
    double best = 0.0;
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      const Eigen::VectorXcd col = a.col(j);
      best = std::max(best, cod.norm({col.data(), static_cast<std::size_t>(col.size())}));
    }
    return {best, true};
  }
  // |T|_{X -> l^inf} is the largest dual norm of a row.
  if (cod.kind() == ModelKind::Sequence && is_infinite(cod.exponent())) {
    const VectorModel dd = dom.dual();
    double best = 0.0;
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
      const Eigen::VectorXcd row = a.row(i).transpose().conjugate();
      best = std::max(best, dd.norm({row.data(), static_cast<std::size_t>(row.size())}));
    }
    return {best, true};
  }

  // Nonlinear power iteration x <- J*(T^* J(T x)) from deterministic starts.
  const OperatorMatrix adj = t.adjoint();
  const VectorModel back = adj.codomain().dual();  // == dom
  double best = 0.0;
  std::vector<Eigen::VectorXcd> starts;
  for (Eigen::Index j = 0; j < a.cols(); ++j) starts.push_back(Eigen::VectorXcd::Unit(a.cols(), j));
  starts.push_back(Eigen::VectorXcd::Ones(a.cols()));
  {
    Eigen::BDCSVD<Eigen::MatrixXcd> svd(a, Eigen::ComputeThinV);
    starts.push_back(svd.matrixV().col(0));
  }
  Eigen::VectorXcd y(a.rows()), jy(a.rows()), z(a.cols()), jz(a.cols());
  for (Eigen::VectorXcd x : starts) {
    for (int it = 0; it < 200; ++it) {
      const double nx = dom.norm({x.data(), static_cast<std::size_t>(x.size())});
      if (!(nx > 0.0)) break;
      y = a * x;
      const double ny = cod.norm({y.data(), static_cast<std::size_t>(y.size())});
      const double ratio = ny / nx;
      if (!(ny > 0.0)) break;
      const bool improved = ratio > best * (1.0 + 1e-14);
      best = std::max(best, ratio);
      cod.duality_map({y.data(), static_cast<std::size_t>(y.size())}, {jy.data(), static_cast<std::size_t>(jy.size())});
      z = adj.matrix() * jy;
      if (z.cwiseAbs().maxCoeff() == 0.0) break;
      back.dual().duality_map({z.data(), static_cast<std::size_t>(z.size())}, {jz.data(), static_cast<std::size_t>(jz.size())});
      x = jz;
      if (!improved && it > 20) break;
    }
  }
  (void)back;
  return {best, false};
}

}  // namespace mlab
