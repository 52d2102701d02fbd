#include "mlab/signal.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "mlab/error.hpp"
#include "mlab/fft.hpp"

namespace mlab {

namespace {

constexpr double kPi = std::numbers::pi;

// Entrywise models: the pointwise norm is an l^u sum over components.
bool entrywise(const VectorModel& m, double& u) {
  switch (m.kind()) {
    case ModelKind::Scalar:
    case ModelKind::Hilbert: u = 2.0; return true;
    case ModelKind::Sequence: u = m.exponent(); return true;
    case ModelKind::Schatten:
      u = 2.0;
      return m.exponent() == 2.0;
  }
  return false;
}

// (-1)^(j - N/2): the phase linking a centered grid to the plain DFT.
inline double centered_sign(std::size_t j, std::size_t N) { return ((j + N / 2) & 1U) ? -1.0 : 1.0; }

void apply_signs(std::span<cplx> a, const GridSpec& g, bool shift_half) {
  const std::size_t N = g.N;
  auto s = [&](std::size_t i) { return shift_half ? centered_sign(i, N) : ((i & 1U) ? -1.0 : 1.0); };
  if (g.d == 1) {
    for (std::size_t i = 0; i < N; ++i) a[i] *= s(i);
  } else {
    for (std::size_t i = 0; i < N; ++i)
      for (std::size_t j = 0; j < N; ++j) a[i * N + j] *= s(i) * s(j);
  }
}

void transform(std::span<cplx> a, const GridSpec& g, int sign) {
  if (g.d == 1)
    fft(a, sign);
  else
    fft_2d(a, g.N, g.N, sign);
}

// h(t) modulus raised to p with the removable singularity at 0.
double sinc_pow(double t, double p) { return std::pow(sinc_modulus(t), p); }

// Euler-Maclaurin estimate of sum_{j >= J+1} (j + c)^{-p}, and a bound on its error.
std::pair<double, double> power_tail(long J, double c, double p) {
  const double x = static_cast<double>(J + 1) + c;
  const double integral = std::pow(x, 1.0 - p) / (p - 1.0);
  const double g = std::pow(x, -p);
  const double dg = -p * std::pow(x, -p - 1.0);
  const double err = p * (p + 1.0) * (p + 2.0) * std::pow(x, -p - 3.0) / 720.0;
  return {integral + 0.5 * g - dg / 12.0, err};
}

double periodization_1d(double p, double t, long J, double& tail_err) {
  t -= std::floor(t);
  double acc = 0.0;
  for (long j = -J; j <= J; ++j) acc += sinc_pow(t + static_cast<double>(j), p);
  const double amp = std::pow(std::abs(std::sin(kPi * t)) / kPi, p);
  const auto [up, e1] = power_tail(J, t, p);
  const auto [down, e2] = power_tail(J, -t, p);
  tail_err = amp * (e1 + e2);
  return acc + amp * (up + down);
}

}  // namespace

double GridSpec::cell() const noexcept { return d == 1 ? step() : step() * step(); }

std::array<double, 2> GridSpec::point(std::size_t linear) const noexcept {
  if (d == 1) return {coord(linear), 0.0};
  return {coord(linear / N), coord(linear % N)};
}

void GridSpec::validate() const {
  require(d == 1 || d == 2, ErrorKind::Domain, "grid dimension must be 1 or 2");
  require(L > 0.0 && std::isfinite(L), ErrorKind::Domain, "grid half-width must be positive");
  require(N >= 2 && N % 2 == 0, ErrorKind::Domain, "grid size N must be even and >= 2");
}

GridFunction::GridFunction(GridSpec grid, VectorModel model)
    : grid_(grid), model_(model), columns_(model.dim()) {
  grid_.validate();
}

std::span<cplx> GridFunction::mutable_component(std::size_t c) {
  auto& col = columns_.at(c);
  if (col.empty()) col.assign(grid_.size(), cplx{});
  return col;
}

void GridFunction::set_component(std::size_t c, std::vector<cplx> values) {
  require(values.empty() || values.size() == grid_.size(), ErrorKind::Structural,
          "component length does not match the grid");
  columns_.at(c) = std::move(values);
}

Vector GridFunction::sample(std::size_t i) const {
  Eigen::VectorXcd e = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(model_.dim()));
  for (std::size_t c = 0; c < columns_.size(); ++c)
    if (!columns_[c].empty()) e(static_cast<Eigen::Index>(c)) = columns_[c][i];
  return {model_, std::move(e)};
}

std::vector<double> GridFunction::pointwise_norms() const {
  const std::size_t n = grid_.size();
  std::vector<double> out(n, 0.0);
  double u = 2.0;
  if (entrywise(model_, u)) {
    for (const auto& col : columns_) {
      if (col.empty()) continue;
      if (is_infinite(u)) {
        for (std::size_t i = 0; i < n; ++i) out[i] = std::max(out[i], std::abs(col[i]));
      } else if (u == 2.0) {
        for (std::size_t i = 0; i < n; ++i) out[i] += std::norm(col[i]);
      } else if (u == 1.0) {
        for (std::size_t i = 0; i < n; ++i) out[i] += std::abs(col[i]);
      } else {
        for (std::size_t i = 0; i < n; ++i) out[i] += std::pow(std::abs(col[i]), u);
      }
    }
    if (u == 2.0)
      for (double& v : out) v = std::sqrt(v);
    else if (!is_infinite(u) && u != 1.0)
      for (double& v : out) v = std::pow(v, 1.0 / u);
    return out;
  }
  Eigen::VectorXcd e(static_cast<Eigen::Index>(model_.dim()));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t c = 0; c < columns_.size(); ++c)
      e(static_cast<Eigen::Index>(c)) = columns_[c].empty() ? cplx{} : columns_[c][i];
    out[i] = model_.norm({e.data(), static_cast<std::size_t>(e.size())});
  }
  return out;
}

GridFunction& GridFunction::operator*=(cplx s) {
  for (auto& col : columns_)
    for (auto& v : col) v *= s;
  return *this;
}

GridFunction& GridFunction::operator+=(const GridFunction& other) {
  require(grid_ == other.grid_ && model_ == other.model_, ErrorKind::Structural,
          "adding grid functions on different grids or models");
  for (std::size_t c = 0; c < columns_.size(); ++c) {
    if (other.columns_[c].empty()) continue;
    auto dst = mutable_component(c);
    for (std::size_t i = 0; i < dst.size(); ++i) dst[i] += other.columns_[c][i];
  }
  return *this;
}

TrigPolynomial::TrigPolynomial(int d, int n, VectorModel model) : d_(d), n_(n), model_(model) {
  require(d == 1 || d == 2, ErrorKind::Domain, "torus dimension must be 1 or 2");
  require(n >= 0, ErrorKind::Domain, "mode radius must be >= 0");
  const Eigen::Index side = 2 * n + 1;
  coeffs_ = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(model.dim()), d == 1 ? side : side * side);
}

std::size_t TrigPolynomial::mode_index(std::array<int, 2> k) const {
  const int side = 2 * n_ + 1;
  require(std::abs(k[0]) <= n_ && (d_ == 1 || std::abs(k[1]) <= n_), ErrorKind::Structural, "mode outside radius");
  if (d_ == 1) return static_cast<std::size_t>(k[0] + n_);
  return static_cast<std::size_t>((k[0] + n_) * side + (k[1] + n_));
}

std::array<int, 2> TrigPolynomial::mode(std::size_t index) const {
  const int side = 2 * n_ + 1;
  const int i = static_cast<int>(index);
  if (d_ == 1) return {i - n_, 0};
  return {i / side - n_, i % side - n_};
}

Vector TrigPolynomial::eval(std::array<double, 2> t) const {
  Eigen::VectorXcd acc = Eigen::VectorXcd::Zero(coeffs_.rows());
  for (std::size_t m = 0; m < modes(); ++m) {
    const auto k = mode(m);
    const double phase = 2.0 * kPi * (k[0] * t[0] + (d_ == 2 ? k[1] * t[1] : 0.0));
    acc += coeffs_.col(static_cast<Eigen::Index>(m)) * cplx(std::cos(phase), std::sin(phase));
  }
  return {model_, std::move(acc)};
}

std::size_t torus_resolution(int n) {
  std::size_t M = 16;
  while (M < static_cast<std::size_t>(8 * std::max(n, 0))) M *= 2;
  return M;
}

GridFunction sample_torus(const TrigPolynomial& f, std::size_t M) {
  if (M == 0) M = torus_resolution(f.n());
  require(M >= static_cast<std::size_t>(2 * f.n() + 1), ErrorKind::Domain, "torus resolution below 2n + 1");
  const GridSpec g{f.d(), 0.5, M};
  GridFunction out(g, f.model());
  const auto& C = f.coeffs();
  const auto Mi = static_cast<long>(M);
  auto wrap = [&](int k) { return static_cast<std::size_t>(((k % Mi) + Mi) % Mi); };
  for (Eigen::Index c = 0; c < C.rows(); ++c) {
    if (C.row(c).cwiseAbs().maxCoeff() == 0.0) continue;
    std::vector<cplx> a(g.size(), cplx{});
    for (std::size_t m = 0; m < f.modes(); ++m) {
      const auto k = f.mode(m);
      const double sgn = ((k[0] + (f.d() == 2 ? k[1] : 0)) & 1) ? -1.0 : 1.0;
      const std::size_t idx = f.d() == 1 ? wrap(k[0]) : wrap(k[0]) * M + wrap(k[1]);
      a[idx] = sgn * C(c, static_cast<Eigen::Index>(m));
    }
    transform(a, g, +1);
    out.set_component(static_cast<std::size_t>(c), std::move(a));
  }
  return out;
}

TrigPolynomial project_torus(const GridFunction& samples, int n) {
  const GridSpec& g = samples.grid();
  require(g.L == 0.5, ErrorKind::Structural, "torus samples must live on GridSpec{d, 1/2, M}");
  require(g.N >= static_cast<std::size_t>(2 * n + 1), ErrorKind::Domain, "torus resolution below 2n + 1");
  TrigPolynomial out(g.d, n, samples.model());
  const std::size_t M = g.N;
  const auto Mi = static_cast<long>(M);
  auto wrap = [&](int k) { return static_cast<std::size_t>(((k % Mi) + Mi) % Mi); };
  const double scale = 1.0 / static_cast<double>(g.size());
  for (std::size_t c = 0; c < samples.model().dim(); ++c) {
    if (!samples.has_component(c)) continue;
    auto src = samples.component(c);
    std::vector<cplx> a(src.begin(), src.end());
    transform(a, g, -1);
    for (std::size_t m = 0; m < out.modes(); ++m) {
      const auto k = out.mode(m);
      const double sgn = ((k[0] + (g.d == 2 ? k[1] : 0)) & 1) ? -1.0 : 1.0;
      const std::size_t idx = g.d == 1 ? wrap(k[0]) : wrap(k[0]) * M + wrap(k[1]);
      out.coeffs()(static_cast<Eigen::Index>(c), static_cast<Eigen::Index>(m)) = sgn * scale * a[idx];
    }
  }
  return out;
}

GridFunction fourier_forward(const GridFunction& f) {
  const GridSpec& g = f.grid();
  GridFunction out(g.dual(), f.model());
  const double scale = g.cell();
  for (std::size_t c = 0; c < f.model().dim(); ++c) {
    if (!f.has_component(c)) continue;
    auto src = f.component(c);
    std::vector<cplx> a(src.begin(), src.end());
    apply_signs(a, g, false);
    transform(a, g, -1);
    apply_signs(a, g, true);
    for (auto& v : a) v *= scale;
    out.set_component(c, std::move(a));
  }
  return out;
}

GridFunction fourier_inverse(const GridFunction& fh) {
  const GridSpec& dg = fh.grid();
  // The physical grid has half-width N / (4 L') where L' is the dual half-width.
  const GridSpec g{dg.d, static_cast<double>(dg.N) / (4.0 * dg.L), dg.N};
  GridFunction out(g, fh.model());
  const double scale = dg.cell();
  for (std::size_t c = 0; c < fh.model().dim(); ++c) {
    if (!fh.has_component(c)) continue;
    auto src = fh.component(c);
    std::vector<cplx> a(src.begin(), src.end());
    apply_signs(a, g, true);
    transform(a, g, +1);
    apply_signs(a, g, false);
    for (auto& v : a) v *= scale;
    out.set_component(c, std::move(a));
  }
  return out;
}

double bochner_from_norms(std::span<const double> norms, double cell, double p) {
  require(!std::isnan(p) && p > 0.0, ErrorKind::Domain, "exponent must be positive");
  double peak = 0.0;
  for (double v : norms) peak = std::max(peak, v);
  if (peak == 0.0) return 0.0;
  if (is_infinite(p)) return peak;
  double acc = 0.0;
  if (p == 1.0) {
    for (double v : norms) acc += v;
    return acc * cell;
  }
  for (double v : norms) acc += std::pow(v / peak, p);
  return peak * std::pow(acc * cell, 1.0 / p);
}

double bochner_norm(const GridFunction& f, double p) {
  require(p >= 1.0, ErrorKind::Domain, "exponent must lie in [1, inf]");
  const auto a = f.pointwise_norms();
  return bochner_from_norms(a, f.grid().cell(), p);
}

double bochner_norm(const TrigPolynomial& f, double p, std::size_t M) {
  return bochner_norm(sample_torus(f, M), p);
}

double weak_norm_from_values(std::span<const double> values, double cell, double p) {
  require(p >= 1.0 && !is_infinite(p), ErrorKind::Domain, "weak norm needs p in [1, inf)");
  std::vector<std::size_t> order(values.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return values[a] > values[b]; });
  double best = 0.0;
  for (std::size_t r = 0; r < order.size(); ++r) {
    const double a = values[order[r]];
    if (a <= 0.0) break;
    best = std::max(best, a * std::pow(static_cast<double>(r + 1) * cell, 1.0 / p));
  }
  return best;
}

double weak_norm(const GridFunction& f, double p) {
  const auto a = f.pointwise_norms();
  return weak_norm_from_values(a, f.grid().cell(), p);
}

GridFunction lp_duality_map(const GridFunction& f, double p) {
  require(p >= 1.0, ErrorKind::Domain, "exponent must lie in [1, inf]");
  const auto a = f.pointwise_norms();
  const double cell = f.grid().cell();
  const double total = bochner_from_norms(a, cell, p);
  require(total > 0.0 && std::isfinite(total), ErrorKind::Degenerate, "duality map of the zero function");
  const VectorModel& model = f.model();
  GridFunction out(f.grid(), model.dual());
  const std::size_t n = f.grid().size();
  const std::size_t dim = model.dim();

  // Scalar weight w_i such that J(f)(t_i) = w_i * j_X(f(t_i)).
  std::vector<double> w(n, 0.0);
  if (is_infinite(p)) {
    const auto it = std::max_element(a.begin(), a.end());
    w[static_cast<std::size_t>(it - a.begin())] = 1.0 / cell;
  } else {
    for (std::size_t i = 0; i < n; ++i)
      if (a[i] > 0.0) w[i] = (p == 1.0) ? 1.0 : std::pow(a[i] / total, p - 1.0);
  }

  double u = 2.0;
  const bool fast = entrywise(model, u) && !is_infinite(u);
  if (fast) {
    for (std::size_t c = 0; c < dim; ++c) {
      if (!f.has_component(c)) continue;
      auto src = f.component(c);
      std::vector<cplx> dst(n, cplx{});
      for (std::size_t i = 0; i < n; ++i) {
        if (w[i] == 0.0 || src[i] == cplx{}) continue;
        const double m = std::abs(src[i]);
        const cplx ph = src[i] / m;
        double jx;
        if (u == 2.0)
          jx = m / a[i];
        else if (u == 1.0)
          jx = 1.0;
        else
          jx = std::pow(m / a[i], u - 1.0);
        dst[i] = w[i] * jx * ph;
      }
      out.set_component(c, std::move(dst));
    }
    return out;
  }
  Eigen::VectorXcd x(static_cast<Eigen::Index>(dim)), jx(static_cast<Eigen::Index>(dim));
  std::vector<std::vector<cplx>> cols(dim);
  for (std::size_t i = 0; i < n; ++i) {
    if (w[i] == 0.0) continue;
    for (std::size_t c = 0; c < dim; ++c)
      x(static_cast<Eigen::Index>(c)) = f.has_component(c) ? f.component(c)[i] : cplx{};
    model.duality_map({x.data(), dim}, {jx.data(), dim});
    for (std::size_t c = 0; c < dim; ++c) {
      if (jx(static_cast<Eigen::Index>(c)) == cplx{}) continue;
      if (cols[c].empty()) cols[c].assign(n, cplx{});
      cols[c][i] = w[i] * jx(static_cast<Eigen::Index>(c));
    }
  }
  for (std::size_t c = 0; c < dim; ++c) out.set_component(c, std::move(cols[c]));
  return out;
}

cplx grid_pairing(const GridFunction& f, const GridFunction& g) {
  require(f.grid() == g.grid() && f.model().dim() == g.model().dim(), ErrorKind::Structural,
          "pairing of grid functions on different grids");
  cplx acc{};
  for (std::size_t c = 0; c < f.model().dim(); ++c) {
    if (!f.has_component(c) || !g.has_component(c)) continue;
    auto a = f.component(c);
    auto b = g.component(c);
    for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * std::conj(b[i]);
  }
  return acc * f.grid().cell();
}

double sinc_modulus(double t) {
  if (t == 0.0) return 1.0;
  return std::abs(std::sin(kPi * t) / (kPi * t));
}

GridFunction phi_k(int k, const GridSpec& grid) {
  require(k >= 1, ErrorKind::Domain, "phi_k needs k >= 1");
  require(grid.d == 1, ErrorKind::Domain, "phi_k lives on the line");
  GridFunction out(grid, VectorModel::scalar());
  auto col = out.mutable_component(0);
  const double freq = static_cast<double>(k) - 0.5;
  for (std::size_t i = 0; i < grid.N; ++i) {
    const double t = grid.coord(i);
    const double s = t == 0.0 ? 1.0 : std::sin(kPi * t) / (kPi * t);
    const double a = 2.0 * kPi * freq * t;
    col[i] = s * cplx(std::cos(a), std::sin(a));
  }
  return out;
}

namespace {

// Inverse transform of the indicator of (lo, hi] on the dual grid, placed in
// component `c` of a grid function over `model`.
GridFunction band_function(double lo, double hi, const GridSpec& grid, const VectorModel& model, std::size_t c) {
  const GridSpec dg = grid.dual();
  const double top = dg.coord(dg.N - 1);
  require(hi <= top, ErrorKind::Domain,
          "band (" + std::to_string(lo) + ", " + std::to_string(hi) + "] exceeds the Nyquist limit " +
              std::to_string(top) + " of the grid");
  GridFunction fh(dg, model);
  auto col = fh.mutable_component(c);
  bool any = false;
  for (std::size_t j = 0; j < dg.N; ++j) {
    const double xi = dg.coord(j);
    if (xi > lo && xi <= hi) {
      col[j] = 1.0;
      any = true;
    }
  }
  require(any, ErrorKind::Domain, "band contains no dual grid node");
  return fourier_inverse(fh);
}

}  // namespace

GridFunction phi_k_band(int k, const GridSpec& grid) {
  require(k >= 1, ErrorKind::Domain, "phi_k needs k >= 1");
  require(grid.d == 1, ErrorKind::Domain, "phi_k lives on the line");
  return band_function(k - 1.0, k, grid, VectorModel::scalar(), 0);
}

GridFunction witness_hormander(int n, double u, std::size_t dim, const GridSpec& grid, WitnessForm form) {
  require(n >= 1, ErrorKind::Domain, "witness index n must be >= 1");
  require(dim > static_cast<std::size_t>(2 * n), ErrorKind::Domain,
          "witness needs dim > 2n (dim = " + std::to_string(dim) + ", n = " + std::to_string(n) + ")");
  require(grid.d == 1, ErrorKind::Domain, "witness lives on the line");
  const VectorModel model = VectorModel::sequence(u, dim);
  if (form == WitnessForm::BandExact) return band_function(n, 2.0 * n, grid, model, 0);

  GridFunction out(grid, model);
  auto col = out.mutable_component(0);
  const double nn = n;
  for (std::size_t i = 0; i < grid.N; ++i) {
    const double t = grid.coord(i);
    if (t == 0.0) {
      col[i] = nn;
      continue;
    }
    // integral of e^{2 pi i xi t} over (n, 2n]
    const cplx a = std::polar(1.0, 4.0 * kPi * nn * t) - std::polar(1.0, 2.0 * kPi * nn * t);
    col[i] = a / cplx(0.0, 2.0 * kPi * t);
  }
  return out;
}

Periodization periodization_H(double p, int d, std::span<const double> t, long terms) {
  require(!std::isnan(p) && p > 1.0 && !is_infinite(p), ErrorKind::Domain,
          "periodization needs p in (1, inf); the series diverges at p = 1");
  require(d == 1 || d == 2, ErrorKind::Domain, "dimension must be 1 or 2");
  require(terms >= 1, ErrorKind::Domain, "need at least one term");
  Periodization out;
  out.terms = terms;
  out.t.assign(t.begin(), t.end());
  out.values.reserve(t.size());
  for (double s : t) {
    double err = 0.0;
    const double h1 = periodization_1d(p, s, terms, err);
    const double v = d == 1 ? h1 : h1 * h1;
    out.values.push_back(v);
    out.tail_bound = std::max(out.tail_bound, d == 1 ? err : 2.0 * h1 * err);
    out.sup = std::max(out.sup, v);
  }
  return out;
}

double periodization_sup(double p, int d, long terms) {
  constexpr int kGrid = 1024;
  std::vector<double> t(kGrid + 1);
  for (int i = 0; i <= kGrid; ++i) t[static_cast<std::size_t>(i)] = 0.5 * i / kGrid;
  const auto coarse = periodization_H(p, 1, t, terms);
  const auto it = std::max_element(coarse.values.begin(), coarse.values.end());
  const auto best = static_cast<std::size_t>(it - coarse.values.begin());
  double lo = t[best == 0 ? 0 : best - 1];
  double hi = t[std::min<std::size_t>(best + 1, kGrid)];
  double err = 0.0;
  auto H = [&](double s) { return periodization_1d(p, s, terms, err); };
  const double phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = hi - phi * (hi - lo), x2 = lo + phi * (hi - lo);
  double f1 = H(x1), f2 = H(x2);
  for (int it2 = 0; it2 < 60; ++it2) {
    if (f1 > f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - phi * (hi - lo);
      f1 = H(x1);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + phi * (hi - lo);
      f2 = H(x2);
    }
  }
  const double s1 = std::max({*it, f1, f2});
  return d == 1 ? s1 : s1 * s1;
}

}  // namespace mlab
