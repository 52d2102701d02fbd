#include "mlab/multiplier.hpp"

#include <algorithm>
#include <cmath>

#include "mlab/error.hpp"
#include "mlab/fft.hpp"

namespace mlab {

TorusMultiplier::TorusMultiplier(SymbolCoefficients coeffs) : coeffs_(std::move(coeffs)) {
  const std::size_t side = static_cast<std::size_t>(2 * coeffs_.n + 1);
  require(coeffs_.m.size() == (coeffs_.d == 1 ? side : side * side), ErrorKind::Structural,
          "coefficient count does not match the mode radius");
  for (const auto& t : coeffs_.m)
    require(t.domain() == coeffs_.m.front().domain() && t.codomain() == coeffs_.m.front().codomain(),
            ErrorKind::Structural, "torus coefficients must share models");
}

TorusMultiplier TorusMultiplier::scalar(int d, const std::vector<cplx>& values, VectorModel model) {
  require(d == 1 || d == 2, ErrorKind::Domain, "torus dimension must be 1 or 2");
  SymbolCoefficients c;
  c.d = d;
  const auto count = values.size();
  std::size_t side = d == 1 ? count : static_cast<std::size_t>(std::llround(std::sqrt(static_cast<double>(count))));
  require(side % 2 == 1 && (d == 1 ? side : side * side) == count, ErrorKind::Structural,
          "scalar coefficient count must be (2n+1)^d");
  c.n = static_cast<int>(side / 2);
  for (const cplx& v : values) c.m.push_back(OperatorMatrix::scalar(model, v));
  return TorusMultiplier(std::move(c));
}

TrigPolynomial apply_torus(const TorusMultiplier& M, const TrigPolynomial& f) {
  require(f.d() == M.d(), ErrorKind::Structural, "torus dimensions differ");
  require(f.n() <= M.n(), ErrorKind::Structural,
          "polynomial radius " + std::to_string(f.n()) + " exceeds multiplier radius " + std::to_string(M.n()));
  require(f.model() == M.domain(), ErrorKind::Structural, "polynomial model does not match the multiplier domain");
  TrigPolynomial out(f.d(), f.n(), M.codomain());
  for (std::size_t i = 0; i < f.modes(); ++i) {
    const auto k = f.mode(i);
    out.coeff(i) = M.coeffs().at({k[0], k[1]}).matrix() * f.coeff(i);
  }
  return out;
}

TrigPolynomial apply_torus_adjoint(const TorusMultiplier& M, const TrigPolynomial& g) {
  require(g.d() == M.d() && g.n() <= M.n(), ErrorKind::Structural, "polynomial does not fit the multiplier");
  require(g.model() == M.codomain().dual(), ErrorKind::Structural, "adjoint input must live in the codomain's dual");
  TrigPolynomial out(g.d(), g.n(), M.domain().dual());
  for (std::size_t i = 0; i < g.modes(); ++i) {
    const auto k = g.mode(i);
    out.coeff(i) = M.coeffs().at({k[0], k[1]}).matrix().adjoint() * g.coeff(i);
  }
  return out;
}

namespace {

bool is_origin_node(const GridSpec& dg, std::size_t i) {
  if (dg.d == 1) return i == dg.N / 2;
  return i == (dg.N / 2) * dg.N + dg.N / 2;
}

Xi node_of(const GridSpec& dg, std::size_t i) {
  const auto p = dg.point(i);
  return {p[0], p[1]};
}

void check_line(const LineMultiplier& M, const GridFunction& f, const VectorModel& expected) {
  require(M.symbol != nullptr, ErrorKind::Structural, "line multiplier has no symbol");
  require(f.grid() == M.grid, ErrorKind::Structural, "grid function does not live on the multiplier grid");
  require(f.model() == expected, ErrorKind::Structural,
          "grid function model " + f.model().describe() + " does not match " + expected.describe());
  if (auto fd = M.symbol->fixed_dimension()) require(*fd == M.grid.d, ErrorKind::Structural, "symbol dimension differs from grid");
}

// Per-node operator application in frequency space, shared by apply and adjoint.
GridFunction apply_frequency(const LineMultiplier& M, const GridFunction& f, bool adjoint, LineApplyInfo* info) {
  const Symbol& m = *M.symbol;
  const GridFunction fh = fourier_forward(f);
  if (info) {
    info->out_of_band_fraction = out_of_band_fraction(fh);
    info->warning = info->out_of_band_fraction > 1e-6;
  }
  const GridSpec& dg = fh.grid();
  const int d = dg.d;
  const VectorModel out_model = adjoint ? m.domain().dual() : m.codomain();
  GridFunction gh(dg, out_model);
  const std::size_t din = f.model().dim(), dout = out_model.dim();
  const bool singular = m.singular_at_zero();

  if (m.is_scalar()) {
    std::vector<cplx> s(dg.size());
    for (std::size_t i = 0; i < dg.size(); ++i) {
      if (singular && is_origin_node(dg, i)) {
        s[i] = 0.0;
        continue;
      }
      const cplx v = m.scalar(node_of(dg, i), d);
      require(std::isfinite(v.real()) && std::isfinite(v.imag()), ErrorKind::Evaluation,
              m.name() + " is not finite at a nonzero frequency node");
      s[i] = adjoint ? std::conj(v) : v;
    }
    for (std::size_t c = 0; c < din; ++c) {
      if (!fh.has_component(c)) continue;
      auto src = fh.component(c);
      std::vector<cplx> dst(src.size());
      for (std::size_t i = 0; i < src.size(); ++i) dst[i] = s[i] * src[i];
      gh.set_component(c, std::move(dst));
    }
    return fourier_inverse(gh);
  }

  std::vector<bool> in_support(din, false);
  for (std::size_t c = 0; c < din; ++c) in_support[c] = fh.has_component(c);
  const std::vector<bool> out_support = adjoint ? std::vector<bool>(dout, true) : m.reachable(in_support);
  std::vector<std::vector<cplx>> cols(dout);
  for (std::size_t c = 0; c < dout; ++c)
    if (out_support[c]) cols[c].assign(dg.size(), cplx{});
  std::vector<cplx> x(din), y(dout);
  for (std::size_t i = 0; i < dg.size(); ++i) {
    if (singular && is_origin_node(dg, i)) continue;
    bool any = false;
    for (std::size_t c = 0; c < din; ++c) {
      x[c] = in_support[c] ? fh.component(c)[i] : cplx{};
      any = any || x[c] != cplx{};
    }
    if (!any) continue;
    const Xi xi = node_of(dg, i);
    if (adjoint)
      m.apply_adjoint(xi, d, x, y);
    else
      m.apply(xi, d, x, y);
    for (std::size_t c = 0; c < dout; ++c) {
      if (y[c] == cplx{}) continue;
      require(std::isfinite(y[c].real()) && std::isfinite(y[c].imag()), ErrorKind::Evaluation,
              m.name() + " is not finite at a nonzero frequency node");
      require(!cols[c].empty(), ErrorKind::Evaluation, m.name() + " reached an undeclared output component");
      cols[c][i] = y[c];
    }
  }
  for (std::size_t c = 0; c < dout; ++c) {
    if (cols[c].empty()) continue;
    const bool zero = std::all_of(cols[c].begin(), cols[c].end(), [](const cplx& v) { return v == cplx{}; });
    if (!zero) gh.set_component(c, std::move(cols[c]));
  }
  return fourier_inverse(gh);
}

}  // namespace

GridFunction apply_line(const LineMultiplier& M, const GridFunction& f, LineApplyInfo* info) {
  check_line(M, f, M.symbol ? M.symbol->domain() : f.model());
  return apply_frequency(M, f, false, info);
}

GridFunction apply_line_adjoint(const LineMultiplier& M, const GridFunction& g) {
  check_line(M, g, M.symbol ? M.symbol->codomain().dual() : g.model());
  return apply_frequency(M, g, true, nullptr);
}

std::vector<double> apply_line_pointwise_norms(const LineMultiplier& M, const GridFunction& f) {
  check_line(M, f, M.symbol ? M.symbol->domain() : f.model());
  const Symbol& m = *M.symbol;
  const VectorModel& cod = m.codomain();
  const bool entrywise = cod.kind() == ModelKind::Sequence || cod.kind() == ModelKind::Hilbert ||
                         cod.kind() == ModelKind::Scalar || (cod.kind() == ModelKind::Schatten && cod.exponent() == 2.0);
  if (!entrywise) return apply_line(M, f).pointwise_norms();
  const double u = cod.kind() == ModelKind::Sequence ? cod.exponent() : 2.0;

  const GridFunction fh = fourier_forward(f);
  const GridSpec& dg = fh.grid();
  const GridSpec& g = f.grid();
  const int d = dg.d;
  const std::size_t din = f.model().dim();
  std::vector<bool> in_support(din, false);
  std::vector<std::size_t> active;
  for (std::size_t c = 0; c < din; ++c)
    if (fh.has_component(c)) {
      in_support[c] = true;
      active.push_back(c);
    }
  const auto out_support = m.reachable(in_support);
  const bool singular = m.singular_at_zero();
  std::vector<double> acc(g.size(), 0.0);
  std::vector<cplx> col(dg.size());
  for (std::size_t c = 0; c < cod.dim(); ++c) {
    if (!out_support[c]) continue;
    bool any = false;
    for (std::size_t i = 0; i < dg.size(); ++i) {
      cplx v{};
      if (!(singular && is_origin_node(dg, i))) {
        const Xi xi = node_of(dg, i);
        for (std::size_t a : active) {
          const cplx x = fh.component(a)[i];
          if (x == cplx{}) continue;
          v += m.entry(xi, d, c, a) * x;
        }
      }
      col[i] = v;
      any = any || v != cplx{};
    }
    if (!any) continue;
    GridFunction one(dg, VectorModel::scalar());
    one.set_component(0, col);
    const GridFunction back = fourier_inverse(one);
    auto b = back.component(0);
    for (std::size_t i = 0; i < g.size(); ++i) {
      const double a = std::abs(b[i]);
      if (is_infinite(u))
        acc[i] = std::max(acc[i], a);
      else if (u == 2.0)
        acc[i] += a * a;
      else if (u == 1.0)
        acc[i] += a;
      else
        acc[i] += std::pow(a, u);
    }
  }
  if (u == 2.0)
    for (double& v : acc) v = std::sqrt(v);
  else if (!is_infinite(u) && u != 1.0)
    for (double& v : acc) v = std::pow(v, 1.0 / u);
  return acc;
}

double out_of_band_fraction(const GridFunction& fh) {
  const GridSpec& dg = fh.grid();
  const double cut = dg.L / 2.0;
  double total = 0.0, outside = 0.0;
  const auto norms = fh.pointwise_norms();
  for (std::size_t i = 0; i < dg.size(); ++i) {
    const auto p = dg.point(i);
    const double e = norms[i] * norms[i];
    total += e;
    if (std::abs(p[0]) > cut || (dg.d == 2 && std::abs(p[1]) > cut)) outside += e;
  }
  return total > 0.0 ? outside / total : 0.0;
}

double homogeneous_seminorm(const GridFunction& f, double s, double p) {
  if (s < 0.0) {
    const GridFunction fh = fourier_forward(f);
    const auto norms = fh.pointwise_norms();
    const double peak = *std::max_element(norms.begin(), norms.end());
    const std::size_t origin = fh.grid().d == 1 ? fh.grid().N / 2 : (fh.grid().N / 2) * fh.grid().N + fh.grid().N / 2;
    require(norms[origin] <= 1e-8 * peak, ErrorKind::Degenerate,
            "negative-order seminorm needs a transform vanishing at the origin");
  }
  if (s == 0.0) return bochner_norm(f, p);
  const LineMultiplier M{riesz_symbol(-s, f.model()), f.grid()};
  return bochner_norm(apply_line(M, f), p);
}

double ratio(const TorusMultiplier& T, const TrigPolynomial& f, double p, double q) {
  const double nf = bochner_norm(f, p);
  require(nf > 0.0, ErrorKind::Degenerate, "ratio of the zero polynomial");
  return bochner_norm(apply_torus(T, f), q) / nf;
}

double ratio(const LineMultiplier& T, const GridFunction& f, double p, double q) {
  const double nf = bochner_norm(f, p);
  require(nf > 0.0, ErrorKind::Degenerate, "ratio of the zero function");
  return bochner_norm(apply_line(T, f), q) / nf;
}

}  // namespace mlab
