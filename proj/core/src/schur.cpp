#include "mlab/schur.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "mlab/error.hpp"
#include "mlab/serialize.hpp"
#include "search.hpp"

namespace mlab {

SpectralResolution SpectralResolution::singletons(std::size_t n) {
  SpectralResolution e;
  e.n = n;
  for (std::size_t i = 0; i < n; ++i)
    e.blocks.push_back({static_cast<int>(i) - static_cast<int>(n / 2), {i}});
  return e;
}

void SpectralResolution::validate() const {
  require(n > 0, ErrorKind::Structural, "spectral resolution needs n > 0");
  std::vector<bool> seen(n, false);
  std::set<int> labels_seen;
  for (const auto& b : blocks) {
    require(labels_seen.insert(b.label).second, ErrorKind::Structural, "block labels must be distinct");
    for (std::size_t i : b.indices) {
      require(i < n, ErrorKind::Structural, "block index out of range");
      require(!seen[i], ErrorKind::Structural, "blocks must be disjoint");
      seen[i] = true;
    }
  }
  require(std::all_of(seen.begin(), seen.end(), [](bool b) { return b; }), ErrorKind::Structural,
          "blocks must cover every index");
}

std::vector<int> SpectralResolution::labels() const {
  std::vector<int> out(n, 0);
  for (const auto& b : blocks)
    for (std::size_t i : b.indices) out.at(i) = b.label;
  return out;
}

cplx SchurData::coefficient(int j) const {
  const auto it = m.find(j);
  return it == m.end() ? cplx{} : it->second;
}

int SchurData::f_of(int label) const {
  if (f.empty()) return label;
  const auto it = f.find(label);
  require(it != f.end(), ErrorKind::Structural, "block label " + std::to_string(label) + " has no f-value");
  return it->second;
}

double cm_constant(const std::map<int, cplx>& m, double r) {
  require(!std::isnan(r) && r >= 1.0, ErrorKind::Domain, "r must lie in [1, inf]");
  const double inv_r = is_infinite(r) ? 0.0 : 1.0 / r;
  double best = 0.0;
  for (const auto& [j, v] : m) best = std::max(best, (1.0 + std::pow(std::abs(j), inv_r)) * std::abs(v));
  return best;
}

Eigen::MatrixXcd schur_symbol_matrix(const SchurData& data, const SpectralResolution& e) {
  e.validate();
  const auto lab = e.labels();
  std::vector<int> fl(e.n);
  for (std::size_t i = 0; i < e.n; ++i) fl[i] = data.f_of(lab[i]);
  const auto n = static_cast<Eigen::Index>(e.n);
  Eigen::MatrixXcd W(n, n);
  for (Eigen::Index j = 0; j < n; ++j)
    for (Eigen::Index k = 0; k < n; ++k)
      W(j, k) = data.coefficient(fl[static_cast<std::size_t>(j)] - fl[static_cast<std::size_t>(k)]);
  return W;
}

Eigen::MatrixXcd schur_multiply(const SchurData& data, const SpectralResolution& e, const Eigen::MatrixXcd& v) {
  require(v.rows() == static_cast<Eigen::Index>(e.n) && v.cols() == v.rows(), ErrorKind::Structural,
          "matrix side does not match the spectral resolution");
  return schur_symbol_matrix(data, e).cwiseProduct(v);
}

SchurData reflect_conjugate(const SchurData& data) {
  SchurData out = data;
  out.m.clear();
  for (const auto& [j, v] : data.m) out.m[-j] = std::conj(v);
  return out;
}

SchurSearch schur_norm_search(const SchurData& data, const SpectralResolution& e, double a, const ProbeConfig& cfg) {
  require(!std::isnan(a) && a > 1.0 && !is_infinite(a), ErrorKind::Domain,
          "Schatten exponent must lie in (1, inf): the duality map degenerates at 1 and inf");
  const Eigen::MatrixXcd W = schur_symbol_matrix(data, e);
  const Eigen::MatrixXcd Wc = W.conjugate();
  const auto n = W.rows();
  const std::size_t len = static_cast<std::size_t>(n * n);
  const VectorModel Sa = VectorModel::schatten(a, e.n);
  const VectorModel Sa_dual = Sa.dual();

  auto norm = [len](const VectorModel& m, const Eigen::MatrixXcd& x) { return m.norm({x.data(), len}); };
  auto dmap = [len](const VectorModel& m, const Eigen::MatrixXcd& x) {
    Eigen::MatrixXcd out(x.rows(), x.cols());
    m.duality_map({x.data(), len}, {out.data(), len});
    return out;
  };

  detail::NormProblem<Eigen::MatrixXcd> P;
  P.ratio = [&](const Eigen::MatrixXcd& v) {
    const double nv = norm(Sa, v);
    require(nv > 0.0, ErrorKind::Degenerate, "zero iterate");
    return norm(Sa, W.cwiseProduct(v)) / nv;
  };
  P.iterate = [&](const Eigen::MatrixXcd& v) {
    const double nv = norm(Sa, v);
    require(nv > 0.0, ErrorKind::Degenerate, "zero iterate");
    const Eigen::MatrixXcd g = W.cwiseProduct(v);
    const double ng = norm(Sa, g);
    if (ng == 0.0) return std::make_pair(0.0, v);
    // Adjoint for the pairing tr(x y^*) multiplies by conj(W).
    const Eigen::MatrixXcd psi = Wc.cwiseProduct(dmap(Sa, g));
    return std::make_pair(ng / nv, dmap(Sa_dual, psi));
  };
  P.random_start = [n](Rng& rng) {
    Eigen::MatrixXcd v(n, n);
    for (Eigen::Index k = 0; k < n; ++k)
      for (Eigen::Index j = 0; j < n; ++j) v(j, k) = rng.complex_gaussian();
    return v;
  };
  P.digest = [](const Eigen::MatrixXcd& v) { return fnv1a({v.data(), static_cast<std::size_t>(v.size())}); };

  std::vector<Eigen::MatrixXcd> seeds;
  seeds.push_back(Eigen::MatrixXcd::Identity(n, n));
  seeds.push_back(Eigen::MatrixXcd::Ones(n, n));
  for (Eigen::Index k = 0; k < n; ++k)
    for (Eigen::Index j = 0; j < n; ++j) {
      if (W(j, k) == cplx{}) continue;
      Eigen::MatrixXcd E = Eigen::MatrixXcd::Zero(n, n);
      E(j, k) = 1.0;
      seeds.push_back(std::move(E));
    }
  auto res = detail::run_search(P, cfg, seeds);
  return {std::move(res.summary), std::move(res.witness)};
}

nlohmann::json schur_data_to_json(const SchurData& d) {
  nlohmann::json m = nlohmann::json::object(), f = nlohmann::json::object();
  for (const auto& [j, v] : d.m) m[std::to_string(j)] = complex_to_json(v);
  for (const auto& [j, v] : d.f) f[std::to_string(j)] = v;
  return {{"m", m}, {"f", f}, {"r", exponent_to_json(d.r)}};
}

namespace {

int parse_label(const std::string& s) {
  std::size_t pos = 0;
  int v = 0;
  try {
    v = std::stoi(s, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  require(pos == s.size() && !s.empty(), ErrorKind::Config, "integer key expected, got '" + s + "'");
  return v;
}

}  // namespace

SchurData schur_data_from_json(const nlohmann::json& j) {
  require(j.is_object(), ErrorKind::Config, "Schur data must be an object");
  SchurData d;
  for (const auto& [key, v] : j.items()) {
    if (key == "m") {
      require(v.is_object(), ErrorKind::Config, "'m' must map integer keys to coefficients");
      for (const auto& [k, c] : v.items()) d.m[parse_label(k)] = complex_from_json(c);
    } else if (key == "f") {
      require(v.is_object(), ErrorKind::Config, "'f' must map integer labels to integers");
      for (const auto& [k, c] : v.items()) {
        require(c.is_number_integer(), ErrorKind::Config, "f-values must be integers");
        d.f[parse_label(k)] = c.get<int>();
      }
    } else if (key == "r") {
      d.r = exponent_from_json(v);
    } else {
      fail(ErrorKind::Config, "unknown Schur data key '" + key + "'");
    }
  }
  return d;
}

nlohmann::json resolution_to_json(const SpectralResolution& e) {
  nlohmann::json blocks = nlohmann::json::array();
  for (const auto& b : e.blocks) blocks.push_back({{"label", b.label}, {"indices", b.indices}});
  return {{"n", e.n}, {"blocks", blocks}};
}

SpectralResolution resolution_from_json(const nlohmann::json& j) {
  require(j.is_object() && j.contains("n"), ErrorKind::Config, "resolution needs 'n'");
  try {
    SpectralResolution e;
    e.n = j.at("n").get<std::size_t>();
    if (!j.contains("blocks")) return SpectralResolution::singletons(e.n);
    for (const auto& b : j.at("blocks")) e.blocks.push_back({b.at("label").get<int>(), b.at("indices").get<std::vector<std::size_t>>()});
    e.validate();
    return e;
  } catch (const nlohmann::json::exception& ex) {
    fail(ErrorKind::Config, std::string("resolution: ") + ex.what());
  } catch (const Error& ex) {
    fail(ErrorKind::Config, ex.what());
  }
}

}  // namespace mlab
