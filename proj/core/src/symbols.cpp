#include "mlab/symbols.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "mlab/error.hpp"
#include "mlab/serialize.hpp"

namespace mlab {

namespace {

constexpr double kPi = std::numbers::pi;

double radius_of(const Xi& xi, int d) { return d == 1 ? std::abs(xi[0]) : std::hypot(xi[0], xi[1]); }

}  // namespace

// ---------------------------------------------------------------------------
// Symbol defaults

cplx Symbol::scalar(const Xi&, int) const { fail(ErrorKind::Structural, name() + " is not a scalar symbol"); }

OperatorMatrix Symbol::eval(const Xi& xi, int d) const {
  require(is_scalar(), ErrorKind::Structural, name() + " does not provide eval");
  return OperatorMatrix::scalar(domain_, scalar(xi, d));
}

void Symbol::apply(const Xi& xi, int d, std::span<const cplx> in, std::span<cplx> out) const {
  if (is_scalar()) {
    const cplx s = scalar(xi, d);
    for (std::size_t i = 0; i < in.size(); ++i) out[i] = s * in[i];
    return;
  }
  const auto m = eval(xi, d);
  Eigen::Map<const Eigen::VectorXcd> x(in.data(), static_cast<Eigen::Index>(in.size()));
  Eigen::Map<Eigen::VectorXcd> y(out.data(), static_cast<Eigen::Index>(out.size()));
  y.noalias() = m.matrix() * x;
}

void Symbol::apply_adjoint(const Xi& xi, int d, std::span<const cplx> in, std::span<cplx> out) const {
  if (is_scalar()) {
    const cplx s = std::conj(scalar(xi, d));
    for (std::size_t i = 0; i < in.size(); ++i) out[i] = s * in[i];
    return;
  }
  const auto m = eval(xi, d);
  Eigen::Map<const Eigen::VectorXcd> x(in.data(), static_cast<Eigen::Index>(in.size()));
  Eigen::Map<Eigen::VectorXcd> y(out.data(), static_cast<Eigen::Index>(out.size()));
  y.noalias() = m.matrix().adjoint() * x;
}

cplx Symbol::entry(const Xi& xi, int d, std::size_t row, std::size_t col) const {
  if (is_scalar()) return row == col ? scalar(xi, d) : cplx{};
  return eval(xi, d).matrix()(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col));
}

double Symbol::op_norm(const Xi& xi, int d) const {
  if (is_scalar()) return std::abs(scalar(xi, d));
  return operator_norm(eval(xi, d)).value;
}

std::vector<bool> Symbol::reachable(const std::vector<bool>& input) const {
  if (is_scalar()) return input;
  return std::vector<bool>(codomain_.dim(), true);
}

OperatorMatrix Symbol::derivative(const Xi& xi, int d, const MultiIndex& alpha) const {
  if (alpha[0] == 0 && alpha[1] == 0) return eval(xi, d);
  fail(ErrorKind::Evaluation, name() + " has no closed-form derivatives");
}

// ---------------------------------------------------------------------------
// Scalar symbols

namespace {

class ScalarSymbol : public Symbol {
 public:
  explicit ScalarSymbol(VectorModel model) : Symbol(model, model) {}
  bool is_scalar() const override { return true; }
  /// Scalar derivative; alpha = 0 gives the value.
  virtual cplx scalar_derivative(const Xi& xi, int d, const MultiIndex& alpha) const {
    if (alpha[0] == 0 && alpha[1] == 0) return scalar(xi, d);
    fail(ErrorKind::Evaluation, name() + " has no closed-form derivatives");
  }
  OperatorMatrix derivative(const Xi& xi, int d, const MultiIndex& alpha) const override {
    return OperatorMatrix::scalar(domain(), scalar_derivative(xi, d, alpha));
  }
};

// m(xi) = g(|xi|^2); derivatives up to order 3 by the chain rule.
class RadialSymbol : public ScalarSymbol {
 public:
  using ScalarSymbol::ScalarSymbol;
  virtual double g(double u, int order) const = 0;

  cplx scalar(const Xi& xi, int d) const override {
    const double u = d == 1 ? xi[0] * xi[0] : xi[0] * xi[0] + xi[1] * xi[1];
    return g(u, 0);
  }
  int closed_form_order() const override { return 3; }

  cplx scalar_derivative(const Xi& xi, int d, const MultiIndex& alpha) const override {
    const int k = alpha[0] + (d == 2 ? alpha[1] : 0);
    require(alpha[0] >= 0 && alpha[1] >= 0 && (d == 2 || alpha[1] == 0), ErrorKind::Domain, "invalid multi-index");
    require(k <= 3, ErrorKind::Evaluation, "closed-form derivatives stop at order 3");
    const double u = d == 1 ? xi[0] * xi[0] : xi[0] * xi[0] + xi[1] * xi[1];
    std::array<int, 3> ax{};
    int n = 0;
    for (int i = 0; i < alpha[0]; ++i) ax[static_cast<std::size_t>(n++)] = 0;
    for (int i = 0; i < alpha[1]; ++i) ax[static_cast<std::size_t>(n++)] = 1;
    auto x = [&](int i) { return xi[static_cast<std::size_t>(ax[static_cast<std::size_t>(i)])]; };
    auto delta = [&](int i, int j) { return ax[static_cast<std::size_t>(i)] == ax[static_cast<std::size_t>(j)] ? 1.0 : 0.0; };
    switch (k) {
      case 0: return g(u, 0);
      case 1: return 2.0 * g(u, 1) * x(0);
      case 2: return 4.0 * g(u, 2) * x(0) * x(1) + 2.0 * g(u, 1) * delta(0, 1);
      default:
        return 8.0 * g(u, 3) * x(0) * x(1) * x(2) +
               4.0 * g(u, 2) * (delta(0, 1) * x(2) + delta(0, 2) * x(1) + delta(1, 2) * x(0));
    }
  }
};

// Falling product prod_{i<j} (e - i), the j-th derivative coefficient of v^e.
double falling(double e, int j) {
  double c = 1.0;
  for (int i = 0; i < j; ++i) c *= e - i;
  return c;
}

class RieszSymbol final : public RadialSymbol {
 public:
  RieszSymbol(double s, VectorModel model) : RadialSymbol(model), s_(s) {}
  std::string name() const override { return "riesz(s=" + std::to_string(s_) + ")"; }
  nlohmann::json spec() const override { return {{"kind", "riesz"}, {"s", s_}}; }
  double g(double u, int j) const override {
    if (s_ == 0.0) return j == 0 ? 1.0 : 0.0;
    return falling(-s_ / 2.0, j) * std::pow(u, -s_ / 2.0 - j);
  }
  std::optional<double> homogeneity() const override { return -s_; }
  bool singular_at_zero() const override { return s_ > 0.0; }

 private:
  double s_;
};

class BesselSymbol final : public RadialSymbol {
 public:
  BesselSymbol(double s, VectorModel model) : RadialSymbol(model), s_(s) {}
  std::string name() const override { return "bessel(s=" + std::to_string(s_) + ")"; }
  nlohmann::json spec() const override { return {{"kind", "bessel"}, {"s", s_}}; }
  double g(double u, int j) const override { return falling(-s_ / 2.0, j) * std::pow(1.0 + u, -s_ / 2.0 - j); }

 private:
  double s_;
};

class GaussianSymbol final : public RadialSymbol {
 public:
  using RadialSymbol::RadialSymbol;
  std::string name() const override { return "gaussian"; }
  nlohmann::json spec() const override { return {{"kind", "gaussian"}}; }
  double g(double u, int j) const override { return std::pow(-kPi, j) * std::exp(-kPi * u); }
};

class IndicatorSymbol final : public ScalarSymbol {
 public:
  IndicatorSymbol(double radius, VectorModel model) : ScalarSymbol(model), radius_(radius) {}
  std::string name() const override { return "indicator(radius=" + std::to_string(radius_) + ")"; }
  nlohmann::json spec() const override { return {{"kind", "indicator"}, {"radius", radius_}}; }
  cplx scalar(const Xi& xi, int d) const override { return radius_of(xi, d) <= radius_ ? 1.0 : 0.0; }
  int closed_form_order() const override { return 8; }
  cplx scalar_derivative(const Xi& xi, int d, const MultiIndex& alpha) const override {
    return alpha[0] == 0 && alpha[1] == 0 ? scalar(xi, d) : cplx{};
  }
  bool near_edge(const Xi& xi, int d, double tol) const override {
    return std::abs(radius_of(xi, d) - radius_) <= tol;
  }

 private:
  double radius_;
};

class ConstantSymbol final : public ScalarSymbol {
 public:
  ConstantSymbol(cplx c, VectorModel model) : ScalarSymbol(model), c_(c) {}
  std::string name() const override { return "constant"; }
  nlohmann::json spec() const override { return {{"kind", "constant"}, {"value", complex_to_json(c_)}}; }
  cplx scalar(const Xi&, int) const override { return c_; }
  std::optional<double> homogeneity() const override { return 0.0; }
  int closed_form_order() const override { return 8; }
  cplx scalar_derivative(const Xi&, int, const MultiIndex& alpha) const override {
    return alpha[0] == 0 && alpha[1] == 0 ? c_ : cplx{};
  }

 private:
  cplx c_;
};

class FunctionSymbol final : public ScalarSymbol {
 public:
  FunctionSymbol(std::string name, std::function<cplx(const Xi&, int)> fn, VectorModel model,
                 std::optional<double> homogeneity, bool singular)
      : ScalarSymbol(model), name_(std::move(name)), fn_(std::move(fn)), hom_(homogeneity), singular_(singular) {}
  std::string name() const override { return name_; }
  nlohmann::json spec() const override { return {{"kind", "function"}, {"name", name_}}; }
  cplx scalar(const Xi& xi, int d) const override { return fn_(xi, d); }
  std::optional<double> homogeneity() const override { return hom_; }
  bool singular_at_zero() const override { return singular_; }

 private:
  std::string name_;
  std::function<cplx(const Xi&, int)> fn_;
  std::optional<double> hom_;
  bool singular_;
};

class ScaledSymbol final : public Symbol {
 public:
  ScaledSymbol(SymbolPtr base, cplx c) : Symbol(base->domain(), base->codomain()), base_(std::move(base)), c_(c) {}
  std::string name() const override { return "scaled(" + base_->name() + ")"; }
  nlohmann::json spec() const override {
    return {{"kind", "scaled"}, {"c", complex_to_json(c_)}, {"base", base_->spec()}};
  }
  std::optional<int> fixed_dimension() const override { return base_->fixed_dimension(); }
  bool is_scalar() const override { return base_->is_scalar(); }
  cplx scalar(const Xi& xi, int d) const override { return c_ * base_->scalar(xi, d); }
  OperatorMatrix eval(const Xi& xi, int d) const override { return base_->eval(xi, d) * c_; }
  void apply(const Xi& xi, int d, std::span<const cplx> in, std::span<cplx> out) const override {
    base_->apply(xi, d, in, out);
    for (auto& v : out) v *= c_;
  }
  void apply_adjoint(const Xi& xi, int d, std::span<const cplx> in, std::span<cplx> out) const override {
    base_->apply_adjoint(xi, d, in, out);
    for (auto& v : out) v *= std::conj(c_);
  }
  cplx entry(const Xi& xi, int d, std::size_t r, std::size_t c) const override { return c_ * base_->entry(xi, d, r, c); }
  double op_norm(const Xi& xi, int d) const override { return std::abs(c_) * base_->op_norm(xi, d); }
  std::vector<bool> reachable(const std::vector<bool>& in) const override { return base_->reachable(in); }
  std::optional<double> homogeneity() const override { return base_->homogeneity(); }
  bool singular_at_zero() const override { return base_->singular_at_zero(); }
  int closed_form_order() const override { return base_->closed_form_order(); }
  OperatorMatrix derivative(const Xi& xi, int d, const MultiIndex& a) const override {
    return base_->derivative(xi, d, a) * c_;
  }
  bool near_edge(const Xi& xi, int d, double tol) const override { return base_->near_edge(xi, d, tol); }

 private:
  SymbolPtr base_;
  cplx c_;
};

// ---------------------------------------------------------------------------
// Operator-valued symbols

class ShiftSymbol final : public Symbol {
 public:
  ShiftSymbol(double alpha, int n_terms, std::size_t dim, double u)
      : Symbol(VectorModel::sequence(u, dim), VectorModel::sequence(u, dim)),
        alpha_(alpha), n_terms_(n_terms), dim_(dim), u_(u) {
    c_.resize(static_cast<std::size_t>(n_terms) + 1, 0.0);
    for (int k = 1; k <= n_terms; ++k) c_[static_cast<std::size_t>(k)] = shift_coefficient(alpha, k);
  }

  std::string name() const override { return "shift(alpha=" + std::to_string(alpha_) + ")"; }
  nlohmann::json spec() const override {
    return {{"kind", "shift"}, {"alpha", alpha_}, {"n_terms", n_terms_}, {"dim", dim_}, {"u", exponent_to_json(u_)}};
  }
  std::optional<int> fixed_dimension() const override { return 1; }

  /// Band index k with xi in (k-1, k], or 0 outside the bands.
  int band(const Xi& xi) const {
    const double x = xi[0];
    if (!(x > 0.0)) return 0;
    const double k = std::ceil(x);
    return k > n_terms_ ? 0 : static_cast<int>(k);
  }

  OperatorMatrix eval(const Xi& xi, int) const override {
    const int k = band(xi);
    if (k == 0) return OperatorMatrix::zero(domain(), codomain());
    return OperatorMatrix::shift(domain(), static_cast<std::size_t>(k)) * c_[static_cast<std::size_t>(k)];
  }
  void apply(const Xi& xi, int, std::span<const cplx> in, std::span<cplx> out) const override {
    std::fill(out.begin(), out.end(), cplx{});
    const int k = band(xi);
    if (k == 0) return;
    const double c = c_[static_cast<std::size_t>(k)];
    for (std::size_t j = 0; j + static_cast<std::size_t>(k) < dim_; ++j) out[j + static_cast<std::size_t>(k)] = c * in[j];
  }
  void apply_adjoint(const Xi& xi, int, std::span<const cplx> in, std::span<cplx> out) const override {
    std::fill(out.begin(), out.end(), cplx{});
    const int k = band(xi);
    if (k == 0) return;
    const double c = c_[static_cast<std::size_t>(k)];
    for (std::size_t j = 0; j + static_cast<std::size_t>(k) < dim_; ++j) out[j] = c * in[j + static_cast<std::size_t>(k)];
  }
  cplx entry(const Xi& xi, int, std::size_t row, std::size_t col) const override {
    const int k = band(xi);
    if (k == 0 || row != col + static_cast<std::size_t>(k)) return {};
    return c_[static_cast<std::size_t>(k)];
  }
  double op_norm(const Xi& xi, int) const override {
    const int k = band(xi);
    return k == 0 ? 0.0 : c_[static_cast<std::size_t>(k)];
  }
  std::vector<bool> reachable(const std::vector<bool>& in) const override {
    std::vector<bool> out(dim_, false);
    for (std::size_t j = 0; j < in.size(); ++j) {
      if (!in[j]) continue;
      for (int k = 1; k <= n_terms_ && j + static_cast<std::size_t>(k) < dim_; ++k) out[j + static_cast<std::size_t>(k)] = true;
    }
    return out;
  }
  int closed_form_order() const override { return 8; }
  OperatorMatrix derivative(const Xi& xi, int d, const MultiIndex& a) const override {
    if (a[0] == 0 && a[1] == 0) return eval(xi, d);
    return OperatorMatrix::zero(domain(), codomain());
  }
  bool near_edge(const Xi& xi, int, double tol) const override {
    const double r = std::round(xi[0]);
    return r >= 0.0 && r <= n_terms_ && std::abs(xi[0] - r) <= tol;
  }

 private:
  double alpha_;
  int n_terms_;
  std::size_t dim_;
  double u_;
  std::vector<double> c_;
};

class CubeStepSymbol final : public Symbol {
 public:
  CubeStepSymbol(double a, int d, std::map<MultiIndex, OperatorMatrix> coeffs, VectorModel dom, VectorModel cod)
      : Symbol(dom, cod), a_(a), d_(d), coeffs_(std::move(coeffs)) {}

  std::string name() const override { return "cube_step(a=" + std::to_string(a_) + ")"; }
  nlohmann::json spec() const override {
    json list = json::array();
    for (const auto& [k, t] : coeffs_) {
      json kk = d_ == 1 ? json::array({k[0]}) : json::array({k[0], k[1]});
      list.push_back({{"k", kk}, {"operator", operator_to_json(t)}});
    }
    return {{"kind", "cube_step"}, {"a", a_}, {"d", d_}, {"coeffs", std::move(list)}};
  }
  std::optional<int> fixed_dimension() const override { return d_; }

  const OperatorMatrix* lookup(const Xi& xi) const {
    MultiIndex k{static_cast<int>(std::floor(xi[0] / a_)), d_ == 2 ? static_cast<int>(std::floor(xi[1] / a_)) : 0};
    const auto it = coeffs_.find(k);
    return it == coeffs_.end() ? nullptr : &it->second;
  }

  OperatorMatrix eval(const Xi& xi, int) const override {
    const auto* t = lookup(xi);
    return t ? *t : OperatorMatrix::zero(domain(), codomain());
  }
  void apply(const Xi& xi, int, std::span<const cplx> in, std::span<cplx> out) const override {
    const auto* t = lookup(xi);
    Eigen::Map<Eigen::VectorXcd> y(out.data(), static_cast<Eigen::Index>(out.size()));
    if (!t) {
      y.setZero();
      return;
    }
    Eigen::Map<const Eigen::VectorXcd> x(in.data(), static_cast<Eigen::Index>(in.size()));
    y.noalias() = t->matrix() * x;
  }
  void apply_adjoint(const Xi& xi, int, std::span<const cplx> in, std::span<cplx> out) const override {
    const auto* t = lookup(xi);
    Eigen::Map<Eigen::VectorXcd> y(out.data(), static_cast<Eigen::Index>(out.size()));
    if (!t) {
      y.setZero();
      return;
    }
    Eigen::Map<const Eigen::VectorXcd> x(in.data(), static_cast<Eigen::Index>(in.size()));
    y.noalias() = t->matrix().adjoint() * x;
  }
  cplx entry(const Xi& xi, int, std::size_t r, std::size_t c) const override {
    const auto* t = lookup(xi);
    return t ? t->matrix()(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) : cplx{};
  }
  double op_norm(const Xi& xi, int) const override {
    const auto* t = lookup(xi);
    if (!t) return 0.0;
    auto it = norms_.find(t);
    if (it != norms_.end()) return it->second;
    return operator_norm(*t).value;
  }
  int closed_form_order() const override { return 8; }
  OperatorMatrix derivative(const Xi& xi, int d, const MultiIndex& a) const override {
    if (a[0] == 0 && a[1] == 0) return eval(xi, d);
    return OperatorMatrix::zero(domain(), codomain());
  }
  bool near_edge(const Xi& xi, int d, double tol) const override {
    for (int i = 0; i < d; ++i) {
      const double s = xi[static_cast<std::size_t>(i)] / a_;
      if (std::abs(s - std::round(s)) * a_ <= tol) return true;
    }
    return false;
  }

  void cache_norms() {
    for (const auto& [k, t] : coeffs_) norms_[&t] = operator_norm(t).value;
  }

 private:
  double a_;
  int d_;
  std::map<MultiIndex, OperatorMatrix> coeffs_;
  std::map<const OperatorMatrix*, double> norms_;
};

}  // namespace

SymbolPtr riesz_symbol(double s, VectorModel model) { return std::make_shared<RieszSymbol>(s, model); }
SymbolPtr bessel_symbol(double s, VectorModel model) { return std::make_shared<BesselSymbol>(s, model); }
SymbolPtr gaussian_symbol(VectorModel model) { return std::make_shared<GaussianSymbol>(model); }

SymbolPtr indicator_symbol(double radius, VectorModel model) {
  require(radius >= 0.0, ErrorKind::Domain, "indicator radius must be >= 0");
  return std::make_shared<IndicatorSymbol>(radius, model);
}

SymbolPtr constant_symbol(cplx value, VectorModel model) { return std::make_shared<ConstantSymbol>(value, model); }

SymbolPtr scaled_symbol(SymbolPtr base, cplx c) {
  require(base != nullptr, ErrorKind::Structural, "scaled_symbol needs a base symbol");
  return std::make_shared<ScaledSymbol>(std::move(base), c);
}

SymbolPtr function_symbol(std::string name, std::function<cplx(const Xi&, int)> fn, VectorModel model,
                          std::optional<double> homogeneity, bool singular_at_zero) {
  return std::make_shared<FunctionSymbol>(std::move(name), std::move(fn), model, homogeneity, singular_at_zero);
}

double shift_coefficient(double alpha, int k) {
  const double l = std::log(k + 1.0);
  return std::pow(static_cast<double>(k), -alpha) / (l * l);
}

SymbolPtr shift_symbol(double alpha, int n_terms, std::size_t dim, double u) {
  require(n_terms >= 1, ErrorKind::Domain, "shift symbol needs n_terms >= 1");
  require(dim > static_cast<std::size_t>(n_terms), ErrorKind::Domain,
          "shift symbol needs dim > n_terms (dim = " + std::to_string(dim) + ", n_terms = " + std::to_string(n_terms) + ")");
  return std::make_shared<ShiftSymbol>(alpha, n_terms, dim, u);
}

SymbolPtr cube_step_symbol(double a, int d, std::map<MultiIndex, OperatorMatrix> coeffs) {
  require(a > 0.0 && std::isfinite(a), ErrorKind::Domain, "cube side a must be positive");
  require(d == 1 || d == 2, ErrorKind::Domain, "cube_step dimension must be 1 or 2");
  require(!coeffs.empty(), ErrorKind::Domain, "cube_step needs at least one coefficient");
  const VectorModel dom = coeffs.begin()->second.domain();
  const VectorModel cod = coeffs.begin()->second.codomain();
  for (const auto& [k, t] : coeffs) {
    require(t.domain() == dom && t.codomain() == cod, ErrorKind::Structural, "cube_step coefficients must share models");
    require(d == 2 || k[1] == 0, ErrorKind::Structural, "1-d cube index must have k[1] = 0");
  }
  auto s = std::make_shared<CubeStepSymbol>(a, d, std::move(coeffs), dom, cod);
  s->cache_norms();
  return s;
}

SymbolPtr symbol_from_json(const nlohmann::json& j, VectorModel model) {
  require(j.is_object() && j.contains("kind") && j["kind"].is_string(), ErrorKind::Config,
          "symbol must be an object with a \"kind\"");
  const auto kind = j["kind"].get<std::string>();
  auto num = [&](const char* key, std::optional<double> dflt = std::nullopt) {
    if (!j.contains(key)) {
      require(dflt.has_value(), ErrorKind::Config, std::string("symbol \"") + kind + "\" needs \"" + key + "\"");
      return *dflt;
    }
    require(j[key].is_number(), ErrorKind::Config, std::string("symbol field \"") + key + "\" must be a number");
    return j[key].get<double>();
  };
  if (j.contains("model")) model = model_from_json(j["model"]);
  if (kind == "riesz") return riesz_symbol(num("s"), model);
  if (kind == "bessel") return bessel_symbol(num("s"), model);
  if (kind == "gaussian") return gaussian_symbol(model);
  if (kind == "indicator") return indicator_symbol(num("radius", 1.0), model);
  if (kind == "constant") return constant_symbol(j.contains("value") ? complex_from_json(j["value"]) : cplx{1.0}, model);
  if (kind == "scaled") return scaled_symbol(symbol_from_json(j.at("base"), model), complex_from_json(j.at("c")));
  if (kind == "shift") {
    const int n_terms = static_cast<int>(num("n_terms"));
    const auto dim = static_cast<std::size_t>(num("dim", n_terms + 1.0));
    return shift_symbol(num("alpha"), n_terms, dim, j.contains("u") ? exponent_from_json(j["u"]) : 2.0);
  }
  if (kind == "cube_step") {
    const int d = static_cast<int>(num("d", 1.0));
    std::map<MultiIndex, OperatorMatrix> coeffs;
    require(j.contains("coeffs") && j["coeffs"].is_array(), ErrorKind::Config, "cube_step needs a \"coeffs\" array");
    for (const auto& e : j["coeffs"]) {
      const auto& kk = e.at("k");
      MultiIndex k{kk.at(0).get<int>(), d == 2 ? kk.at(1).get<int>() : 0};
      coeffs.emplace(k, operator_from_json(e.at("operator")));
    }
    return cube_step_symbol(num("a"), d, std::move(coeffs));
  }
  fail(ErrorKind::Config, "unknown symbol kind \"" + kind + "\"");
}

// ---------------------------------------------------------------------------
// Symbol-side norms

long FrequencyLattice::half_count() const {
  require(step > 0.0 && radius >= 0.0, ErrorKind::Domain, "lattice needs step > 0 and radius >= 0");
  return static_cast<long>(std::floor(radius / step + 1e-9));
}

std::size_t FrequencyLattice::size() const {
  const auto side = static_cast<std::size_t>(2 * half_count() + 1);
  return d == 1 ? side : side * side;
}

Xi FrequencyLattice::node(std::size_t i) const {
  const long J = half_count();
  const auto side = static_cast<std::size_t>(2 * J + 1);
  if (d == 1) return {static_cast<double>(static_cast<long>(i) - J) * step, 0.0};
  return {static_cast<double>(static_cast<long>(i / side) - J) * step,
          static_cast<double>(static_cast<long>(i % side) - J) * step};
}

namespace {

bool is_origin(const Xi& xi, int d) { return xi[0] == 0.0 && (d == 1 || xi[1] == 0.0); }

std::vector<double> lattice_norms(const Symbol& m, const FrequencyLattice& lat, bool skip_origin) {
  std::vector<double> out;
  out.reserve(lat.size());
  for (std::size_t i = 0; i < lat.size(); ++i) {
    const Xi xi = lat.node(i);
    if (skip_origin && is_origin(xi, lat.d)) continue;
    out.push_back(m.op_norm(xi, lat.d));
  }
  return out;
}

}  // namespace

double lr_symbol_norm(const Symbol& m, double r, const FrequencyLattice& lat) {
  require(!std::isnan(r) && r >= 1.0, ErrorKind::Domain, "r must lie in [1, inf]");
  const bool singular = m.singular_at_zero();
  if (singular && !is_infinite(r)) {
    const auto h = m.homogeneity();
    if (h && *h < 0.0 && r * (-*h) >= lat.d) return kInf;
  }
  if (singular && is_infinite(r)) return kInf;
  const auto v = lattice_norms(m, lat, singular);
  return bochner_from_norms(v, lat.cell(), r);
}

double weak_lr_symbol_norm(const Symbol& m, double r, const FrequencyLattice& lat) {
  const auto v = lattice_norms(m, lat, m.singular_at_zero());
  return weak_norm_from_values(v, lat.cell(), r);
}

double uniform_weighted_bound(const Symbol& m, double sigma, const FrequencyLattice& lat) {
  double best = 0.0;
  for (std::size_t i = 0; i < lat.size(); ++i) {
    const Xi xi = lat.node(i);
    if (is_origin(xi, lat.d)) continue;
    const double v = m.op_norm(xi, lat.d);
    if (v == 0.0) continue;
    best = std::max(best, std::pow(radius_of(xi, lat.d), sigma) * v);
  }
  return best;
}

std::size_t SymbolCoefficients::index(MultiIndex k) const {
  const int side = 2 * n + 1;
  require(std::abs(k[0]) <= n && (d == 1 || std::abs(k[1]) <= n), ErrorKind::Structural, "mode outside radius");
  if (d == 1) return static_cast<std::size_t>(k[0] + n);
  return static_cast<std::size_t>((k[0] + n) * side + (k[1] + n));
}

MultiIndex SymbolCoefficients::mode(std::size_t i) const {
  const int side = 2 * n + 1;
  const int j = static_cast<int>(i);
  if (d == 1) return {j - n, 0};
  return {j / side - n, j % side - n};
}

SymbolCoefficients averaged_coefficients(const Symbol& m, double a, int n, int order, int d) {
  require(a > 0.0, ErrorKind::Domain, "cube side a must be positive");
  require(n >= 0 && order >= 1, ErrorKind::Domain, "need n >= 0 and order >= 1");
  require(d == 1 || d == 2, ErrorKind::Domain, "dimension must be 1 or 2");
  SymbolCoefficients out;
  out.d = d;
  out.n = n;
  out.a = a;
  const std::size_t modes = d == 1 ? static_cast<std::size_t>(2 * n + 1) : static_cast<std::size_t>((2 * n + 1) * (2 * n + 1));
  out.m.reserve(modes);
  const auto rows = static_cast<Eigen::Index>(m.codomain().dim());
  const auto cols = static_cast<Eigen::Index>(m.domain().dim());
  for (std::size_t i = 0; i < modes; ++i) {
    const MultiIndex k = out.mode(i);
    Eigen::MatrixXcd acc = Eigen::MatrixXcd::Zero(rows, cols);
    cplx sacc{};
    long used = 0, dropped = 0;
    const int o2 = d == 1 ? 1 : order;
    for (int i0 = 0; i0 < order; ++i0) {
      for (int i1 = 0; i1 < o2; ++i1) {
        Xi xi{a * (k[0] + (i0 + 0.5) / order), d == 2 ? a * (k[1] + (i1 + 0.5) / order) : 0.0};
        if (m.is_scalar()) {
          const cplx v = m.scalar(xi, d);
          if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
            ++dropped;
            continue;
          }
          sacc += v;
        } else {
          const auto v = m.eval(xi, d).matrix();
          if (!v.allFinite()) {
            ++dropped;
            continue;
          }
          acc += v;
        }
        ++used;
      }
    }
    if (dropped > 0)
      out.warnings.push_back("coefficient k=(" + std::to_string(k[0]) + (d == 2 ? "," + std::to_string(k[1]) : "") +
                             "): " + std::to_string(dropped) + " singular node(s) excluded");
    require(used > 0, ErrorKind::Evaluation, "symbol is not finite anywhere on a cube");
    if (m.is_scalar())
      out.m.push_back(OperatorMatrix::scalar(m.domain(), sacc / static_cast<double>(used)));
    else
      out.m.emplace_back(m.domain(), m.codomain(), acc / static_cast<double>(used));
  }
  return out;
}

namespace {

// Average of |xi|^sigma over the cube [-1/2, 1/2]^d (sigma > -d).
double unit_cell_power_average(double sigma, int d) {
  if (d == 1) return std::pow(0.5, sigma) / (1.0 + sigma);
  // 8 / (sigma + 2) * int_0^{pi/4} (2 cos t)^{-(sigma + 2)} dt, Simpson.
  const int n = 2000;
  const double h = (kPi / 4.0) / n;
  double acc = 0.0;
  for (int i = 0; i <= n; ++i) {
    const double w = (i == 0 || i == n) ? 1.0 : (i % 2 ? 4.0 : 2.0);
    acc += w * std::pow(2.0 * std::cos(i * h), -(sigma + 2.0));
  }
  return 8.0 / (sigma + 2.0) * acc * h / 3.0;
}

}  // namespace

KernelReport kernel_positivity_check(const Symbol& m, const GridSpec& grid) {
  grid.validate();
  const GridSpec dg = grid.dual();
  const int d = grid.d;
  const std::size_t rows = m.is_scalar() ? 1 : m.codomain().dim();
  const std::size_t cols = m.is_scalar() ? 1 : m.domain().dim();
  const std::size_t origin = d == 1 ? dg.N / 2 : (dg.N / 2) * dg.N + dg.N / 2;

  // Value carried by the origin node.
  Eigen::MatrixXcd dc;
  if (m.singular_at_zero()) {
    const auto h = m.homogeneity();
    const double delta = dg.step();
    if (h && *h > -d) {
      const Xi unit{1.0, 0.0};
      const double f = std::pow(delta, *h) * unit_cell_power_average(*h, d);
      dc = (m.is_scalar() ? Eigen::MatrixXcd::Constant(1, 1, m.scalar(unit, d)) : m.eval(unit, d).matrix()) * f;
    } else {
      const int sub = 64;
      dc = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
      const int s2 = d == 1 ? 1 : sub;
      for (int i = 0; i < sub; ++i)
        for (int j = 0; j < s2; ++j) {
          const Xi xi{delta * ((i + 0.5) / sub - 0.5), d == 2 ? delta * ((j + 0.5) / sub - 0.5) : 0.0};
          dc += m.is_scalar() ? Eigen::MatrixXcd::Constant(1, 1, m.scalar(xi, d)) : m.eval(xi, d).matrix();
        }
      dc /= static_cast<double>(sub * s2);
    }
  }

  KernelReport rep;
  rep.min_real = kInf;
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) {
      GridFunction mh(dg, VectorModel::scalar());
      auto col = mh.mutable_component(0);
      for (std::size_t i = 0; i < dg.size(); ++i) {
        if (i == origin && m.singular_at_zero()) {
          col[i] = dc(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
          continue;
        }
        const auto p = dg.point(i);
        const Xi xi{p[0], p[1]};
        col[i] = m.is_scalar() ? m.scalar(xi, d) : m.entry(xi, d, r, c);
      }
      const GridFunction k = fourier_inverse(mh);
      for (const cplx& v : k.component(0)) {
        rep.min_real = std::min(rep.min_real, v.real());
        rep.max_abs_imag = std::max(rep.max_abs_imag, std::abs(v.imag()));
        rep.max_abs = std::max(rep.max_abs, std::abs(v));
      }
    }
  }
  rep.tolerance = 1e-6 * rep.max_abs;
  rep.positive = rep.min_real >= -rep.tolerance && rep.max_abs_imag <= rep.tolerance;
  return rep;
}

double homogeneity_defect(const Symbol& m, int d, const std::vector<std::pair<Xi, double>>& samples) {
  const auto h = m.homogeneity();
  require(h.has_value(), ErrorKind::Domain, m.name() + " declares no homogeneity");
  double worst = 0.0;
  for (const auto& [xi, lambda] : samples) {
    const Xi scaled{lambda * xi[0], lambda * xi[1]};
    const double base = std::pow(lambda, *h) * m.op_norm(xi, d);
    const double v = m.op_norm(scaled, d);
    if (base == 0.0) {
      worst = std::max(worst, std::abs(v));
      continue;
    }
    worst = std::max(worst, std::abs(v - base) / base);
  }
  return worst;
}

}  // namespace mlab
