#include "mlab/probes.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "mlab/error.hpp"
#include "mlab/parallel.hpp"
#include "mlab/rng.hpp"
#include "mlab/serialize.hpp"
#include "search.hpp"

namespace mlab {

void ProbeConfig::validate() const {
  require(trials > 0 && tuple_len > 0 && ascent_iters > 0 && restarts >= 0, ErrorKind::Config,
          "probe counts must be positive (restarts may be 0)");
}

nlohmann::json probe_config_to_json(const ProbeConfig& c) {
  return {{"master_seed", c.master_seed},
          {"trials", c.trials},
          {"tuple_len", c.tuple_len},
          {"ascent_iters", c.ascent_iters},
          {"restarts", c.restarts}};
}

ProbeConfig probe_config_from_json(const nlohmann::json& j, ProbeConfig c) {
  require(j.is_object(), ErrorKind::Config, "probe config must be an object");
  try {
    for (const auto& [key, v] : j.items()) {
      if (key == "master_seed")
        c.master_seed = v.get<std::uint64_t>();
      else if (key == "trials")
        c.trials = v.get<int>();
      else if (key == "tuple_len")
        c.tuple_len = v.get<int>();
      else if (key == "ascent_iters")
        c.ascent_iters = v.get<int>();
      else if (key == "restarts")
        c.restarts = v.get<int>();
      else
        fail(ErrorKind::Config, "unknown probe key '" + key + "'");
    }
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorKind::Config, std::string("probe config: ") + e.what());
  }
  c.validate();
  return c;
}

nlohmann::json SearchSummary::to_json() const {
  return {{"lower_bound", lower_bound},   {"converged", converged},   {"discarded", discarded},
          {"iterations", iterations},     {"restart_best", restart_best}, {"witness_digest", witness_digest}};
}

nlohmann::json FamilyEstimate::to_json() const {
  return {{"lower_bound", lower_bound},
          {"stderr", std_error},
          {"singleton_max", singleton_max},
          {"restart_best", restart_best},
          {"seed_values", seed_values},
          {"best_members", best.members},
          {"witness_digest", witness_digest},
          {"skipped", skipped}};
}

namespace {

void check_exponent_open(double p, const char* what) {
  require(!std::isnan(p) && p > 1.0 && !is_infinite(p), ErrorKind::Domain,
          std::string(what) + " must lie in (1, inf) for the norm search");
}

std::uint64_t digest_matrix(const Eigen::MatrixXcd& m) {
  return fnv1a({m.data(), static_cast<std::size_t>(m.size())});
}

std::uint64_t digest_grid(const GridFunction& f) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (std::size_t c = 0; c < f.model().dim(); ++c)
    if (f.has_component(c)) h = fnv1a(f.component(c), h ^ c);
  return h;
}

// Top right singular vector of m_k, the best single-mode direction for
// Hilbertian models and a good start otherwise.
Eigen::VectorXcd top_direction(const Eigen::MatrixXcd& m) {
  if (m.cols() == 1) return Eigen::VectorXcd::Ones(1);
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m, Eigen::ComputeThinV);
  return svd.matrixV().col(0);
}

}  // namespace

TorusSearch norm_search(const TorusMultiplier& T, double p, double q, const ProbeConfig& cfg,
                        const std::vector<TrigPolynomial>& seeds_in) {
  check_exponent_open(p, "p");
  check_exponent_open(q, "q");
  const int n = T.n(), d = T.d();
  const std::size_t M = torus_resolution(n);
  const double pp = dual_exponent(p);

  detail::NormProblem<TrigPolynomial> P;
  P.ratio = [&](const TrigPolynomial& x) {
    const double nx = bochner_norm(x, p, M);
    require(nx > 0.0, ErrorKind::Degenerate, "zero iterate");
    return bochner_norm(apply_torus(T, x), q, M) / nx;
  };
  P.iterate = [&](const TrigPolynomial& x) {
    const GridFunction xs = sample_torus(x, M);
    const double nx = bochner_norm(xs, p);
    require(nx > 0.0, ErrorKind::Degenerate, "zero iterate");
    const GridFunction gs = sample_torus(apply_torus(T, x), M);
    const double ng = bochner_norm(gs, q);
    if (ng == 0.0) return std::make_pair(0.0, x);
    const TrigPolynomial phi = project_torus(lp_duality_map(gs, q), x.n());
    const GridFunction psi = sample_torus(apply_torus_adjoint(T, phi), M);
    return std::make_pair(ng / nx, project_torus(lp_duality_map(psi, pp), x.n()));
  };
  P.random_start = [&](Rng& rng) {
    TrigPolynomial x(d, n, T.domain());
    auto& c = x.coeffs();
    for (Eigen::Index j = 0; j < c.cols(); ++j)
      for (Eigen::Index i = 0; i < c.rows(); ++i) c(i, j) = rng.complex_gaussian();
    return x;
  };
  P.digest = [](const TrigPolynomial& x) { return digest_matrix(x.coeffs()); };

  std::vector<TrigPolynomial> seeds = seeds_in;
  for (const auto& s : seeds)
    require(s.d() == d && s.n() <= n && s.model() == T.domain(), ErrorKind::Structural,
            "seed polynomial does not fit the multiplier");
  // Single-mode seeds for the modes with the largest top singular value.
  const auto& ms = T.coeffs().m;
  std::vector<double> top(ms.size());
  for (std::size_t i = 0; i < ms.size(); ++i) top[i] = singular_values(ms[i].matrix())(0);
  std::vector<std::size_t> order(ms.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return top[a] > top[b]; });
  order.resize(std::min<std::size_t>(order.size(), 16));
  for (std::size_t i : order) {
    const auto& mk = ms[i].matrix();
    if (top[i] == 0.0) continue;
    TrigPolynomial x(d, n, T.domain());
    const auto k = T.coeffs().mode(i);
    x.coeff(x.mode_index({k[0], k[1]})) = top_direction(mk);
    seeds.push_back(std::move(x));
  }
  auto res = detail::run_search(P, cfg, seeds);
  return {std::move(res.summary), std::move(res.witness)};
}

namespace {

// Sum of a few modulated Gaussian bumps with random vector coefficients.
GridFunction random_bumps(Rng& rng, const GridSpec& g, const VectorModel& model, double band) {
  GridFunction f(g, model);
  const int bumps = 6;
  for (int b = 0; b < bumps; ++b) {
    const double c0 = rng.uniform(-g.L / 4, g.L / 4), c1 = rng.uniform(-g.L / 4, g.L / 4);
    const double w = rng.uniform(0.5, 3.0);
    const double nu0 = rng.uniform(-band, band), nu1 = rng.uniform(-band, band);
    std::vector<cplx> x(model.dim());
    for (auto& v : x) v = rng.complex_gaussian();
    for (std::size_t c = 0; c < model.dim(); ++c) {
      auto col = f.mutable_component(c);
      for (std::size_t i = 0; i < g.size(); ++i) {
        const auto t = g.point(i);
        double r2 = (t[0] - c0) * (t[0] - c0);
        double phase = nu0 * t[0];
        if (g.d == 2) {
          r2 += (t[1] - c1) * (t[1] - c1);
          phase += nu1 * t[1];
        }
        const double amp = std::exp(-std::numbers::pi * r2 / (w * w));
        if (amp < 1e-300) continue;
        col[i] += x[c] * amp * std::polar(1.0, 2.0 * std::numbers::pi * phase);
      }
    }
  }
  return f;
}

template <class Apply, class Adjoint>
detail::NormProblem<GridFunction> line_problem(Apply apply, Adjoint adjoint, double p, double q, GridSpec g,
                                               VectorModel model) {
  const double pp = dual_exponent(p);
  detail::NormProblem<GridFunction> P;
  P.ratio = [=](const GridFunction& x) {
    const double nx = bochner_norm(x, p);
    require(nx > 0.0, ErrorKind::Degenerate, "zero iterate");
    return bochner_norm(apply(x), q) / nx;
  };
  P.iterate = [=](const GridFunction& x) {
    const double nx = bochner_norm(x, p);
    require(nx > 0.0, ErrorKind::Degenerate, "zero iterate");
    const GridFunction y = apply(x);
    const double ny = bochner_norm(y, q);
    if (ny == 0.0) return std::make_pair(0.0, x);
    const GridFunction psi = adjoint(lp_duality_map(y, q));
    return std::make_pair(ny / nx, lp_duality_map(psi, pp));
  };
  const double band = std::min(g.dual().L / 4.0, 4.0);
  P.random_start = [=](Rng& rng) { return random_bumps(rng, g, model, band); };
  P.digest = digest_grid;
  return P;
}

}  // namespace

LineSearch norm_search(const LineMultiplier& T, double p, double q, const ProbeConfig& cfg,
                       const std::vector<GridFunction>& seeds) {
  check_exponent_open(p, "p");
  check_exponent_open(q, "q");
  require(T.symbol != nullptr, ErrorKind::Structural, "line multiplier has no symbol");
  T.grid.validate();
  for (const auto& s : seeds)
    require(s.grid() == T.grid && s.model() == T.symbol->domain(), ErrorKind::Structural,
            "seed function does not fit the multiplier");
  auto P = line_problem([T](const GridFunction& x) { return apply_line(T, x); },
                        [T](const GridFunction& y) { return apply_line_adjoint(T, y); }, p, q, T.grid,
                        T.symbol->domain());
  auto res = detail::run_search(P, cfg, seeds);
  return {std::move(res.summary), std::move(res.witness)};
}

LineSearch fourier_constant_lower_bound(const VectorModel& model, double p, const GridSpec& grid,
                                        const ProbeConfig& cfg) {
  require(!std::isnan(p) && p >= 1.0 && p <= 2.0, ErrorKind::Domain, "Fourier type exponent must lie in [1, 2]");
  grid.validate();
  const double q = dual_exponent(p);
  auto P = line_problem([](const GridFunction& x) { return fourier_forward(x); },
                        [](const GridFunction& y) { return fourier_inverse(y); }, p, q, grid, model);

  // Seeds: a centred Gaussian along e_0 (extremal for p = 1, 2) and disjoint
  // translated Gaussians on the basis vectors.
  std::vector<GridFunction> seeds;
  const std::size_t dim = model.dim();
  auto gaussian = [&](double centre, std::size_t comp, GridFunction& f) {
    auto col = f.mutable_component(comp);
    for (std::size_t i = 0; i < grid.size(); ++i) {
      const auto t = grid.point(i);
      double r2 = (t[0] - centre) * (t[0] - centre);
      if (grid.d == 2) r2 += t[1] * t[1];
      col[i] += std::exp(-std::numbers::pi * r2);
    }
  };
  {
    GridFunction f(grid, model);
    gaussian(0.0, 0, f);
    seeds.push_back(std::move(f));
  }
  if (dim > 1) {
    const std::size_t count = model.kind() == ModelKind::Schatten ? model.side() : dim;
    const double spacing = std::min(4.0, 1.6 * grid.L / static_cast<double>(count));
    GridFunction f(grid, model);
    for (std::size_t k = 0; k < count; ++k) {
      const std::size_t comp = model.kind() == ModelKind::Schatten ? k * model.side() + k : k;
      gaussian((static_cast<double>(k) - 0.5 * static_cast<double>(count - 1)) * spacing, comp, f);
    }
    seeds.push_back(std::move(f));
  }
  auto res = detail::run_search(P, cfg, seeds);
  return {std::move(res.summary), std::move(res.witness)};
}

void OperatorFamily::validate() const {
  require(!members.empty(), ErrorKind::Domain, "operator family is empty");
  for (const auto& t : members)
    require(t.domain() == members.front().domain() && t.codomain() == members.front().codomain(),
            ErrorKind::Structural, "family members must share models");
  require(labels.empty() || labels.size() == members.size(), ErrorKind::Structural, "one label per member");
}

OperatorFamily weighted_symbol_family(const Symbol& m, double sigma, const std::vector<Xi>& xi_samples, int d) {
  require(!xi_samples.empty(), ErrorKind::Domain, "weighted family needs at least one frequency sample");
  OperatorFamily F;
  for (const Xi& xi : xi_samples) {
    const double r = d == 1 ? std::abs(xi[0]) : std::hypot(xi[0], xi[1]);
    require(r > 0.0, ErrorKind::Domain, "frequency samples must avoid 0");
    F.members.push_back(m.eval(xi, d) * std::pow(r, sigma));
    F.labels.push_back("xi=" + std::to_string(xi[0]) + (d == 2 ? "," + std::to_string(xi[1]) : ""));
  }
  return F;
}

namespace {

enum class TupleKind { Family, Type, Cotype };

// Shared-draw Monte Carlo evaluation of one tuple ratio with incremental
// coordinate updates. Sums are stored one trial per column.
class TupleObjective {
 public:
  TupleObjective(TupleKind kind, const std::vector<OperatorMatrix>* ops, VectorModel in, VectorModel out,
                 double exponent, const Eigen::MatrixXcd& draws)
      : kind_(kind), ops_(ops), in_(in), out_(out), e_(exponent), G_(draws) {}

  struct State {
    std::vector<std::size_t> idx;
    Eigen::MatrixXcd X, Y;    // columns x_j and T_j x_j
    Eigen::MatrixXcd SX, SY;  // per-trial sums
    double value = 0.0;
    double std_error = 0.0;
  };

  State make(const FamilyTuple& t) const {
    State s;
    const auto L = static_cast<Eigen::Index>(t.vectors.size());
    require(L <= G_.cols(), ErrorKind::Structural, "tuple longer than the draw matrix");
    s.idx = t.members;
    s.X.resize(static_cast<Eigen::Index>(in_.dim()), L);
    for (Eigen::Index j = 0; j < L; ++j) s.X.col(j) = t.vectors[static_cast<std::size_t>(j)];
    const auto Gl = G_.leftCols(L);
    s.SX = s.X * Gl.transpose();
    if (kind_ == TupleKind::Family) {
      s.Y.resize(static_cast<Eigen::Index>(out_.dim()), L);
      for (Eigen::Index j = 0; j < L; ++j) s.Y.col(j) = (*ops_)[s.idx[static_cast<std::size_t>(j)]].matrix() * s.X.col(j);
      s.SY = s.Y * Gl.transpose();
    }
    evaluate(s);
    return s;
  }

  // Coordinate ascent: `sweeps` passes over the tuple with a gradient
  // direction of the log-ratio and halving step sizes; ties keep the incumbent.
  void ascend(State& s, int sweeps) const {
    if (!(s.value > 0.0)) return;
    const Eigen::Index L = s.X.cols();
    for (int sweep = 0; sweep < sweeps; ++sweep) {
      for (Eigen::Index j = 0; j < L; ++j) {
        const Eigen::VectorXcd dir = direction(s, j);
        const double dn = dir.norm();
        if (!(dn > 0.0) || !std::isfinite(dn)) continue;
        const double xn = s.X.col(j).norm();
        const double eta0 = (xn > 0.0 ? xn : 1.0) / dn;
        for (int i = 0; i < 8; ++i) {
          const Eigen::VectorXcd dx = eta0 * std::ldexp(1.0, -i) * dir;
          State c = s;
          update(c, j, dx);
          if (c.value > s.value * (1.0 + 1e-12)) {
            s = std::move(c);
            break;
          }
        }
      }
    }
  }

  /// Exact ratio for a single-member tuple (no Monte Carlo involved).
  double singleton(std::size_t member) const {
    if (kind_ == TupleKind::Family) return operator_norm((*ops_)[member]).value;
    return 1.0;  // E|g x|^2 = |x|^2 for a standard complex Gaussian g
  }

 private:
  static double col_norm(const VectorModel& m, const Eigen::MatrixXcd& A, Eigen::Index t) {
    return m.norm({A.col(t).data(), static_cast<std::size_t>(A.rows())});
  }

  double exponent_sum(const State& s, double e) const {
    double acc = 0.0;
    for (Eigen::Index j = 0; j < s.X.cols(); ++j) {
      const double v = col_norm(in_, s.X, j);
      acc = is_infinite(e) ? std::max(acc, v) : acc + std::pow(v, e);
    }
    return acc;
  }

  void evaluate(State& s) const {
    const Eigen::Index T = G_.rows();
    std::vector<double> a(static_cast<std::size_t>(T)), b(static_cast<std::size_t>(T));
    double A = 0.0, B = 0.0;
    for (Eigen::Index t = 0; t < T; ++t) {
      const double nb = col_norm(in_, s.SX, t);
      b[static_cast<std::size_t>(t)] = nb * nb;
      B += nb * nb;
      if (kind_ == TupleKind::Family) {
        const double na = col_norm(out_, s.SY, t);
        a[static_cast<std::size_t>(t)] = na * na;
        A += na * na;
      }
    }
    A /= static_cast<double>(T);
    B /= static_cast<double>(T);
    const double inv_t = 1.0 / static_cast<double>(T);
    auto var = [&](const std::vector<double>& v, double mean) {
      double acc = 0.0;
      for (double x : v) acc += (x - mean) * (x - mean);
      return acc * inv_t / std::max<double>(1.0, static_cast<double>(T) - 1.0);
    };
    const double vB = var(b, B);
    switch (kind_) {
      case TupleKind::Family: {
        if (!(B > 0.0)) {
          s.value = 0.0;
          return;
        }
        double cov = 0.0;
        for (std::size_t t = 0; t < a.size(); ++t) cov += (a[t] - A) * (b[t] - B);
        cov *= inv_t / std::max<double>(1.0, static_cast<double>(T) - 1.0);
        const double R2 = A / B;
        const double vR2 = var(a, A) / (B * B) + A * A * vB / (B * B * B * B) - 2.0 * A * cov / (B * B * B);
        s.value = std::sqrt(R2);
        s.std_error = R2 > 0.0 ? std::sqrt(std::max(vR2, 0.0) / (4.0 * R2)) : 0.0;
        return;
      }
      case TupleKind::Type: {
        const double S = exponent_sum(s, e_);
        if (!(S > 0.0)) {
          s.value = 0.0;
          return;
        }
        const double den = is_infinite(e_) ? S : std::pow(S, 1.0 / e_);
        s.value = std::sqrt(B) / den;
        s.std_error = B > 0.0 ? std::sqrt(vB) / (2.0 * std::sqrt(B)) / den : 0.0;
        return;
      }
      case TupleKind::Cotype: {
        const double S = exponent_sum(s, e_);
        if (!(B > 0.0)) {
          s.value = 0.0;
          return;
        }
        const double num = is_infinite(e_) ? S : std::pow(S, 1.0 / e_);
        s.value = num / std::sqrt(B);
        s.std_error = s.value * std::sqrt(vB) / (2.0 * B);
        return;
      }
    }
  }

  void update(State& s, Eigen::Index j, const Eigen::VectorXcd& dx) const {
    s.X.col(j) += dx;
    const auto g = G_.col(j);
    s.SX.noalias() += dx * g.transpose();
    if (kind_ == TupleKind::Family) {
      const Eigen::VectorXcd dy = (*ops_)[s.idx[static_cast<std::size_t>(j)]].matrix() * dx;
      s.Y.col(j) += dy;
      s.SY.noalias() += dy * g.transpose();
    }
    evaluate(s);
  }

  // (2/T) sum_t conj(G_tj) |S_t| J(S_t), the gradient of mean |S_t|^2 in x_j.
  Eigen::VectorXcd moment_gradient(const VectorModel& m, const Eigen::MatrixXcd& S, Eigen::Index j) const {
    const Eigen::Index T = G_.rows();
    Eigen::VectorXcd acc = Eigen::VectorXcd::Zero(S.rows());
    Eigen::VectorXcd J(S.rows());
    const auto n = static_cast<std::size_t>(S.rows());
    for (Eigen::Index t = 0; t < T; ++t) {
      const double nt = m.norm({S.col(t).data(), n});
      if (nt == 0.0) continue;
      m.duality_map({S.col(t).data(), n}, {J.data(), n});
      acc += (std::conj(G_(t, j)) * nt) * J;
    }
    return acc * (2.0 / static_cast<double>(T));
  }

  Eigen::VectorXcd direction(const State& s, Eigen::Index j) const {
    const Eigen::Index T = G_.rows();
    double B = 0.0;
    for (Eigen::Index t = 0; t < T; ++t) B += std::pow(col_norm(in_, s.SX, t), 2);
    B /= static_cast<double>(T);
    if (!(B > 0.0)) return Eigen::VectorXcd::Zero(s.X.rows());
    const Eigen::VectorXcd gB = moment_gradient(in_, s.SX, j);
    if (kind_ == TupleKind::Family) {
      double A = 0.0;
      for (Eigen::Index t = 0; t < T; ++t) A += std::pow(col_norm(out_, s.SY, t), 2);
      A /= static_cast<double>(T);
      if (!(A > 0.0)) return Eigen::VectorXcd::Zero(s.X.rows());
      const Eigen::VectorXcd gA =
          (*ops_)[s.idx[static_cast<std::size_t>(j)]].matrix().adjoint() * moment_gradient(out_, s.SY, j);
      return gA / (2.0 * A) - gB / (2.0 * B);
    }
    // Gradient of log (sum |x_k|^e)^{1/e} in x_j.
    const Eigen::VectorXcd xj = s.X.col(j);
    const double nj = in_.norm({xj.data(), static_cast<std::size_t>(xj.size())});
    Eigen::VectorXcd gS = Eigen::VectorXcd::Zero(xj.size());
    if (nj > 0.0) {
      Eigen::VectorXcd J(xj.size());
      in_.duality_map({xj.data(), static_cast<std::size_t>(xj.size())}, {J.data(), static_cast<std::size_t>(J.size())});
      const double S = exponent_sum(s, e_);
      if (is_infinite(e_))
        gS = nj >= S ? Eigen::VectorXcd(J / S) : gS;
      else
        gS = J * (std::pow(nj, e_ - 1.0) / S);
    }
    if (kind_ == TupleKind::Type) return gB / (2.0 * B) - gS;
    return gS - gB / (2.0 * B);
  }

  TupleKind kind_;
  const std::vector<OperatorMatrix>* ops_;
  VectorModel in_, out_;
  double e_;
  const Eigen::MatrixXcd& G_;
};

Eigen::VectorXcd random_unit(Rng& rng, const VectorModel& m) {
  Eigen::VectorXcd v(static_cast<Eigen::Index>(m.dim()));
  for (auto& x : v) x = rng.complex_gaussian();
  return v / m.norm({v.data(), static_cast<std::size_t>(v.size())});
}

std::uint64_t digest_tuple(const Eigen::MatrixXcd& X) { return digest_matrix(X); }

FamilyEstimate estimate_tuples(TupleKind kind, bool unimodular, const std::vector<OperatorMatrix>& ops,
                               const VectorModel& in, const VectorModel& out, double exponent,
                               const ProbeConfig& cfg, const std::vector<FamilyTuple>& seeds) {
  cfg.validate();
  std::size_t L = static_cast<std::size_t>(cfg.tuple_len);
  for (const auto& s : seeds) {
    require(s.vectors.size() == s.members.size() && !s.members.empty(), ErrorKind::Structural,
            "seed tuple needs one vector per member");
    for (std::size_t k : s.members) require(k < ops.size(), ErrorKind::Structural, "seed member out of range");
    for (const auto& v : s.vectors)
      require(v.size() == static_cast<Eigen::Index>(in.dim()), ErrorKind::Structural, "seed vector size mismatch");
    L = std::max(L, s.members.size());
  }

  // Shared draws: trials x L, from the first child stream.
  Eigen::MatrixXcd G(cfg.trials, static_cast<Eigen::Index>(L));
  {
    Rng rng(child_seed(cfg.master_seed, 0));
    for (Eigen::Index t = 0; t < G.rows(); ++t)
      for (Eigen::Index j = 0; j < G.cols(); ++j) G(t, j) = unimodular ? rng.unimodular() : rng.complex_gaussian();
  }
  const TupleObjective obj(kind, &ops, in, out, exponent, G);

  FamilyEstimate est;
  std::vector<double> singles(ops.size());
  parallel_for(ops.size(), [&](std::size_t k) { singles[k] = obj.singleton(k); });
  for (std::size_t k = 0; k < ops.size(); ++k) {
    if (singles[k] > est.singleton_max) {
      est.singleton_max = singles[k];
      est.best = {{k}, {}};
    }
  }
  est.lower_bound = est.singleton_max;

  const std::size_t restarts = static_cast<std::size_t>(cfg.restarts);
  const std::size_t tasks = seeds.size() + restarts;
  std::vector<std::optional<TupleObjective::State>> results(tasks);
  est.seed_values.assign(seeds.size(), 0.0);
  parallel_for(tasks, [&](std::size_t t) {
    FamilyTuple tuple;
    if (t < seeds.size()) {
      tuple = seeds[t];
    } else {
      Rng rng(child_seed(cfg.master_seed, 1 + (t - seeds.size())));
      for (int j = 0; j < cfg.tuple_len; ++j) {
        tuple.members.push_back(static_cast<std::size_t>(rng.index(ops.size())));
        tuple.vectors.push_back(random_unit(rng, in));
      }
    }
    auto s = obj.make(tuple);
    if (!(s.value > 0.0) || !std::isfinite(s.value)) return;
    if (t < seeds.size()) est.seed_values[t] = s.value;
    obj.ascend(s, 2);
    results[t] = std::move(s);
  });

  for (std::size_t t = 0; t < tasks; ++t) {
    if (!results[t]) {
      ++est.skipped;
      est.restart_best.push_back(0.0);
      continue;
    }
    const auto& s = *results[t];
    est.restart_best.push_back(s.value);
    if (s.value > est.lower_bound) {
      est.lower_bound = s.value;
      est.std_error = s.std_error;
      est.best.members = s.idx;
      est.best.vectors.clear();
      for (Eigen::Index j = 0; j < s.X.cols(); ++j) est.best.vectors.push_back(s.X.col(j));
      est.witness_digest = hex_digest(digest_tuple(s.X));
    }
  }
  return est;
}

FamilyEstimate family_estimate(const OperatorFamily& F, const ProbeConfig& cfg, const std::vector<FamilyTuple>& seeds,
                               bool unimodular) {
  F.validate();
  return estimate_tuples(TupleKind::Family, unimodular, F.members, F.members.front().domain(),
                         F.members.front().codomain(), 2.0, cfg, seeds);
}

// Canonical basis tuple (diagonal matrix units for Schatten models).
FamilyTuple basis_tuple(const VectorModel& model) {
  FamilyTuple t;
  const bool schatten = model.kind() == ModelKind::Schatten;
  const std::size_t count = schatten ? model.side() : model.dim();
  for (std::size_t k = 0; k < count; ++k) {
    Eigen::VectorXcd e = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(model.dim()));
    e(static_cast<Eigen::Index>(schatten ? k * model.side() + k : k)) = 1.0;
    t.members.push_back(0);
    t.vectors.push_back(std::move(e));
  }
  return t;
}

}  // namespace

FamilyEstimate gamma_bound_estimate(const OperatorFamily& F, const ProbeConfig& cfg,
                                    const std::vector<FamilyTuple>& seeds) {
  return family_estimate(F, cfg, seeds, false);
}

FamilyEstimate rademacher_bound_estimate(const OperatorFamily& F, const ProbeConfig& cfg,
                                         const std::vector<FamilyTuple>& seeds) {
  return family_estimate(F, cfg, seeds, true);
}

FamilyEstimate type_constant_estimate(const VectorModel& model, double p, const ProbeConfig& cfg) {
  require(!std::isnan(p) && p >= 1.0 && p <= 2.0, ErrorKind::Domain, "type exponent must lie in [1, 2]");
  const std::vector<OperatorMatrix> id{OperatorMatrix::identity(model)};
  return estimate_tuples(TupleKind::Type, false, id, model, model, p, cfg, {basis_tuple(model)});
}

FamilyEstimate cotype_constant_estimate(const VectorModel& model, double q, const ProbeConfig& cfg) {
  require(!std::isnan(q) && q >= 2.0, ErrorKind::Domain, "cotype exponent must lie in [2, inf]");
  const std::vector<OperatorMatrix> id{OperatorMatrix::identity(model)};
  return estimate_tuples(TupleKind::Cotype, false, id, model, model, q, cfg, {basis_tuple(model)});
}

}  // namespace mlab
