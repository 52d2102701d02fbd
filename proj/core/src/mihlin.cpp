#include "mlab/mihlin.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>

#include "mlab/error.hpp"
#include "mlab/parallel.hpp"
#include "mlab/rng.hpp"

namespace mlab {

namespace {

double binomial(int n, int k) {
  double c = 1.0;
  for (int i = 1; i <= k; ++i) c = c * (n - k + i) / i;
  return c;
}

Eigen::MatrixXcd value_matrix(const Symbol& m, const Xi& xi, int d) {
  if (m.is_scalar()) return Eigen::MatrixXcd::Constant(1, 1, m.scalar(xi, d));
  return m.eval(xi, d).matrix();
}

// Tensor central difference of order alpha with step h.
Eigen::MatrixXcd central_difference(const Symbol& m, const Xi& xi, int d, const MultiIndex& a, double h) {
  Eigen::MatrixXcd acc;
  const int k0 = a[0], k1 = d == 2 ? a[1] : 0;
  for (int i = 0; i <= k0; ++i) {
    for (int j = 0; j <= k1; ++j) {
      const double w = ((i + j) % 2 ? -1.0 : 1.0) * binomial(k0, i) * binomial(k1, j);
      Xi p{xi[0] + (0.5 * k0 - i) * h, xi[1] + (d == 2 ? (0.5 * k1 - j) * h : 0.0)};
      Eigen::MatrixXcd v = value_matrix(m, p, d) * w;
      if (acc.size() == 0)
        acc = std::move(v);
      else
        acc += v;
    }
  }
  return acc / std::pow(h, k0 + k1);
}

double radius(const Xi& xi, int d) { return d == 1 ? std::abs(xi[0]) : std::hypot(xi[0], xi[1]); }

struct Node {
  Xi xi;
  double weight;
};

std::vector<Node> annulus_nodes(double R, int d, const MihlinOptions& o) {
  std::vector<Node> nodes;
  if (d == 1) {
    const int n = o.nodes_1d;
    const double w = R / n;
    for (int i = 0; i < n; ++i) {
      const double x = R * (1.0 + (i + 0.5) / n);
      nodes.push_back({{x, 0.0}, w});
      nodes.push_back({{-x, 0.0}, w});
    }
    return nodes;
  }
  const int n = o.nodes_2d;
  const double dr = R / n, dt = 2.0 * std::numbers::pi / n;
  for (int i = 0; i < n; ++i) {
    const double rho = R * (1.0 + (i + 0.5) / n);
    for (int j = 0; j < n; ++j) {
      const double t = (j + 0.5) * dt;
      nodes.push_back({{rho * std::cos(t), rho * std::sin(t)}, rho * dr * dt});
    }
  }
  return nodes;
}

// Unit probe vectors (columns) in `model`: canonical basis plus random directions.
Eigen::MatrixXcd probe_set(const VectorModel& model, int random, std::uint64_t seed) {
  const auto n = static_cast<Eigen::Index>(model.dim());
  Eigen::MatrixXcd P(n, n + random);
  P.leftCols(n).setIdentity();
  Rng rng(seed);
  for (int k = 0; k < random; ++k) {
    Eigen::VectorXcd v(n);
    for (Eigen::Index i = 0; i < n; ++i) v(i) = rng.complex_gaussian();
    v /= model.norm({v.data(), static_cast<std::size_t>(n)});
    P.col(n + k) = v;
  }
  return P;
}

}  // namespace

Eigen::MatrixXcd numerical_derivative(const Symbol& m, const Xi& xi, int d, const MultiIndex& alpha, bool& unstable) {
  unstable = false;
  const int order = alpha[0] + (d == 2 ? alpha[1] : 0);
  if (order == 0) return value_matrix(m, xi, d);
  const double h0 = 1e-3 * std::max(radius(xi, d), 1e-300);
  const auto D1 = central_difference(m, xi, d, alpha, h0);
  const auto D2 = central_difference(m, xi, d, alpha, h0 / 2);
  const auto D3 = central_difference(m, xi, d, alpha, h0 / 4);
  const Eigen::MatrixXcd R1 = (4.0 * D2 - D1) / 3.0;
  const Eigen::MatrixXcd R2 = (4.0 * D3 - D2) / 3.0;
  const double scale = std::max(R2.cwiseAbs().maxCoeff(),
                                1e-12 * value_matrix(m, xi, d).cwiseAbs().maxCoeff() / std::pow(radius(xi, d), order));
  if (scale > 0.0 && (R1 - R2).cwiseAbs().maxCoeff() > 1e-4 * scale) unstable = true;
  return (16.0 * R2 - R1) / 15.0;
}

MihlinReport mihlin_annulus_report(const Symbol& m, int d, double r, double rho, int n_derivs,
                                   const std::vector<double>& R_list, const MihlinOptions& o) {
  require(d == 1 || d == 2, ErrorKind::Domain, "dimension must be 1 or 2");
  require(!std::isnan(r) && r >= 1.0, ErrorKind::Domain, "r must lie in [1, inf]");
  require(!std::isnan(rho) && rho >= 1.0, ErrorKind::Domain, "rho must lie in [1, inf)");
  require(!is_infinite(rho), ErrorKind::Domain, "rho = inf is not supported by the annulus report");
  require(n_derivs >= 0, ErrorKind::Domain, "n_derivs must be >= 0");
  require(!R_list.empty(), ErrorKind::Domain, "R_list must be nonempty");
  for (double R : R_list) require(R > 0.0 && std::isfinite(R), ErrorKind::Domain, "annulus radii must be positive");
  const bool numerical = o.numerical || n_derivs > m.closed_form_order();

  std::vector<MultiIndex> alphas;
  for (int k = 0; k <= n_derivs; ++k) {
    if (d == 1)
      alphas.push_back({k, 0});
    else
      for (int a0 = k; a0 >= 0; --a0) alphas.push_back({a0, k - a0});
  }

  const bool scalar = m.is_scalar();
  Eigen::MatrixXcd X, Y;
  if (!scalar) {
    X = probe_set(m.domain(), o.random_probes, child_seed(o.seed, 0));
    Y = probe_set(m.codomain().dual(), o.random_probes, child_seed(o.seed, 1));
  }
  const VectorModel cod = m.codomain();
  const VectorModel dom_dual = m.domain().dual();

  MihlinReport rep;
  rep.d = d;
  rep.r = r;
  rep.rho = rho;
  rep.entries.resize(alphas.size() * R_list.size());

  parallel_for(
      rep.entries.size(),
      [&](std::size_t cell) {
        const MultiIndex alpha = alphas[cell / R_list.size()];
        const double R = R_list[cell % R_list.size()];
        const int order = alpha[0] + alpha[1];
        MihlinEntry e;
        e.alpha = alpha;
        e.R = R;
        e.numerical = numerical && order > 0;
        std::vector<double> acc1(scalar ? 1 : static_cast<std::size_t>(X.cols()), 0.0);
        std::vector<double> acc2(scalar ? 1 : static_cast<std::size_t>(Y.cols()), 0.0);
        for (const Node& nd : annulus_nodes(R, d, o)) {
          const double tol = (e.numerical ? 2e-3 : 1e-12) * radius(nd.xi, d);
          if (m.near_edge(nd.xi, d, tol)) {
            ++e.excluded_nodes;
            continue;
          }
          Eigen::MatrixXcd D;
          if (e.numerical) {
            bool unstable = false;
            D = numerical_derivative(m, nd.xi, d, alpha, unstable);
            e.flagged = e.flagged || unstable;
          } else if (scalar) {
            D = m.derivative(nd.xi, d, alpha).matrix().topLeftCorner(1, 1);
          } else {
            D = m.derivative(nd.xi, d, alpha).matrix();
          }
          if (scalar) {
            const double v = std::pow(std::abs(D(0, 0)), rho) * nd.weight;
            acc1[0] += v;
            acc2[0] += v;
            continue;
          }
          const Eigen::MatrixXcd DX = D * X;
          const Eigen::MatrixXcd DY = D.adjoint() * Y;
          for (Eigen::Index c = 0; c < DX.cols(); ++c) {
            const Eigen::VectorXcd col = DX.col(c);
            acc1[static_cast<std::size_t>(c)] +=
                std::pow(cod.norm({col.data(), static_cast<std::size_t>(col.size())}), rho) * nd.weight;
          }
          for (Eigen::Index c = 0; c < DY.cols(); ++c) {
            const Eigen::VectorXcd col = DY.col(c);
            acc2[static_cast<std::size_t>(c)] +=
                std::pow(dom_dual.norm({col.data(), static_cast<std::size_t>(col.size())}), rho) * nd.weight;
          }
        }
        const double inv_r = is_infinite(r) ? 0.0 : 1.0 / r;
        const double weight = std::pow(R, order + d * inv_r - d / rho);
        e.m1 = weight * std::pow(*std::max_element(acc1.begin(), acc1.end()), 1.0 / rho);
        e.m2 = weight * std::pow(*std::max_element(acc2.begin(), acc2.end()), 1.0 / rho);
        rep.entries[cell] = e;
      },
      o.threads);

  for (const auto& e : rep.entries) {
    rep.M1 = std::max(rep.M1, e.m1);
    rep.M2 = std::max(rep.M2, e.m2);
  }
  if (m.homogeneity()) rep.notes.push_back("homogeneous symbol: entries extend to all R by scaling");
  long excluded = 0;
  for (const auto& e : rep.entries) excluded += e.excluded_nodes;
  if (excluded > 0) rep.notes.push_back(std::to_string(excluded) + " node(s) at non-smooth points excluded");
  return rep;
}

double mihlin_R_spread(const MihlinReport& report) {
  std::map<std::pair<int, int>, std::pair<double, double>> range;
  for (const auto& e : report.entries) {
    auto key = std::make_pair(e.alpha[0], e.alpha[1]);
    auto [it, fresh] = range.try_emplace(key, e.m1, e.m1);
    if (!fresh) {
      it->second.first = std::min(it->second.first, e.m1);
      it->second.second = std::max(it->second.second, e.m1);
    }
  }
  double worst = 0.0;
  for (const auto& [k, mm] : range)
    if (mm.second > 0.0) worst = std::max(worst, (mm.second - mm.first) / mm.second);
  return worst;
}

}  // namespace mlab
