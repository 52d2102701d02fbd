#include "mlab/serialize.hpp"

#include <cmath>
#include <cstdio>
#include <cstring>

#include "mlab/error.hpp"

namespace mlab {

json exponent_to_json(double p) {
  if (is_infinite(p)) return "inf";
  return p;
}

double exponent_from_json(const json& j) {
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    require(s == "inf" || s == "infinity", ErrorKind::Config, "exponent string must be \"inf\"");
    return kInf;
  }
  require(j.is_number(), ErrorKind::Config, "exponent must be a number or \"inf\"");
  return j.get<double>();
}

json complex_to_json(cplx z) { return json::array({z.real(), z.imag()}); }

cplx complex_from_json(const json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  require(j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number(), ErrorKind::Config,
          "complex value must be a number or an [re, im] pair");
  return {j[0].get<double>(), j[1].get<double>()};
}

json complex_array_to_json(std::span<const cplx> values) {
  json out = json::array();
  for (const cplx& z : values) out.push_back(complex_to_json(z));
  return out;
}

std::vector<cplx> complex_array_from_json(const json& j) {
  require(j.is_array(), ErrorKind::Config, "expected an array of complex values");
  std::vector<cplx> out;
  out.reserve(j.size());
  for (const auto& e : j) out.push_back(complex_from_json(e));
  return out;
}

json model_to_json(const VectorModel& m) {
  switch (m.kind()) {
    case ModelKind::Scalar: return {{"kind", "scalar"}};
    case ModelKind::Sequence: return {{"kind", "sequence"}, {"u", exponent_to_json(m.exponent())}, {"n", m.side()}};
    case ModelKind::Schatten: return {{"kind", "schatten"}, {"p", exponent_to_json(m.exponent())}, {"n", m.side()}};
    case ModelKind::Hilbert: return {{"kind", "hilbert"}, {"n", m.side()}};
  }
  return {};
}

VectorModel model_from_json(const json& j) {
  require(j.is_object() && j.contains("kind") && j["kind"].is_string(), ErrorKind::Config,
          "model must be an object with a \"kind\"");
  const auto kind = j["kind"].get<std::string>();
  auto dim = [&] {
    require(j.contains("n") && j["n"].is_number_integer() && j["n"].get<long>() >= 1, ErrorKind::Config,
            "model dimension \"n\" must be a positive integer");
    return j["n"].get<std::size_t>();
  };
  if (kind == "scalar") return VectorModel::scalar();
  if (kind == "hilbert") return VectorModel::hilbert(dim());
  if (kind == "sequence") {
    require(j.contains("u"), ErrorKind::Config, "sequence model needs \"u\"");
    return VectorModel::sequence(exponent_from_json(j["u"]), dim());
  }
  if (kind == "schatten") {
    require(j.contains("p"), ErrorKind::Config, "schatten model needs \"p\"");
    return VectorModel::schatten(exponent_from_json(j["p"]), dim());
  }
  fail(ErrorKind::Config, "unknown model kind \"" + kind + "\"");
}

json matrix_to_json(const Eigen::MatrixXcd& m) {
  json data = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r)
    for (Eigen::Index c = 0; c < m.cols(); ++c) data.push_back(complex_to_json(m(r, c)));
  return {{"rows", m.rows()}, {"cols", m.cols()}, {"data", std::move(data)}};
}

Eigen::MatrixXcd matrix_from_json(const json& j) {
  require(j.is_object() && j.contains("rows") && j.contains("cols") && j.contains("data"), ErrorKind::Config,
          "matrix needs rows, cols and data");
  const auto rows = j["rows"].get<Eigen::Index>();
  const auto cols = j["cols"].get<Eigen::Index>();
  const auto data = complex_array_from_json(j["data"]);
  require(static_cast<Eigen::Index>(data.size()) == rows * cols, ErrorKind::Config, "matrix data has the wrong length");
  Eigen::MatrixXcd m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r)
    for (Eigen::Index c = 0; c < cols; ++c) m(r, c) = data[static_cast<std::size_t>(r * cols + c)];
  return m;
}

json operator_to_json(const OperatorMatrix& t) {
  return {{"domain", model_to_json(t.domain())}, {"codomain", model_to_json(t.codomain())},
          {"matrix", matrix_to_json(t.matrix())}};
}

OperatorMatrix operator_from_json(const json& j) {
  require(j.is_object() && j.contains("domain") && j.contains("codomain") && j.contains("matrix"), ErrorKind::Config,
          "operator needs domain, codomain and matrix");
  return {model_from_json(j["domain"]), model_from_json(j["codomain"]), matrix_from_json(j["matrix"])};
}

json grid_to_json(const GridSpec& g) { return {{"d", g.d}, {"L", g.L}, {"N", g.N}}; }

GridSpec grid_from_json(const json& j, GridSpec g) {
  if (j.is_null()) return g;
  require(j.is_object(), ErrorKind::Config, "grid must be an object");
  for (const auto& [key, value] : j.items()) {
    if (key == "d") {
      require(value.is_number_integer(), ErrorKind::Config, "grid.d must be an integer");
      g.d = value.get<int>();
    } else if (key == "L") {
      require(value.is_number(), ErrorKind::Config, "grid.L must be a number");
      g.L = value.get<double>();
    } else if (key == "N") {
      require(value.is_number_integer() && value.get<long>() > 0, ErrorKind::Config, "grid.N must be a positive integer");
      g.N = value.get<std::size_t>();
    } else {
      fail(ErrorKind::Config, "unknown grid key \"" + key + "\"");
    }
  }
  try {
    g.validate();
  } catch (const Error& e) {
    fail(ErrorKind::Config, e.what());
  }
  return g;
}

json grid_function_to_json(const GridFunction& f) {
  json comps = json::object();
  for (std::size_t c = 0; c < f.model().dim(); ++c)
    if (f.has_component(c)) comps[std::to_string(c)] = complex_array_to_json(f.component(c));
  return {{"type", "grid_function"}, {"grid", grid_to_json(f.grid())}, {"model", model_to_json(f.model())},
          {"components", std::move(comps)}};
}

GridFunction grid_function_from_json(const json& j) {
  require(j.value("type", "") == "grid_function", ErrorKind::Config, "not a grid_function document");
  GridFunction f(grid_from_json(j.at("grid")), model_from_json(j.at("model")));
  for (const auto& [key, value] : j.at("components").items()) {
    const auto c = static_cast<std::size_t>(std::stoul(key));
    require(c < f.model().dim(), ErrorKind::Config, "component index out of range");
    auto values = complex_array_from_json(value);
    require(values.size() == f.grid().size(), ErrorKind::Config, "component length does not match the grid");
    f.set_component(c, std::move(values));
  }
  return f;
}

json trig_polynomial_to_json(const TrigPolynomial& f) {
  json coeffs = json::array();
  for (std::size_t m = 0; m < f.modes(); ++m) {
    const Eigen::VectorXcd col = f.coeff(m);
    coeffs.push_back(complex_array_to_json({col.data(), static_cast<std::size_t>(col.size())}));
  }
  return {{"type", "trig_polynomial"}, {"d", f.d()}, {"n", f.n()}, {"model", model_to_json(f.model())},
          {"coeffs", std::move(coeffs)}};
}

TrigPolynomial trig_polynomial_from_json(const json& j) {
  require(j.value("type", "") == "trig_polynomial", ErrorKind::Config, "not a trig_polynomial document");
  TrigPolynomial f(j.at("d").get<int>(), j.at("n").get<int>(), model_from_json(j.at("model")));
  const auto& coeffs = j.at("coeffs");
  require(coeffs.size() == f.modes(), ErrorKind::Config, "coefficient count does not match the mode radius");
  for (std::size_t m = 0; m < f.modes(); ++m) {
    const auto v = complex_array_from_json(coeffs[m]);
    require(v.size() == f.model().dim(), ErrorKind::Config, "coefficient length does not match the model");
    for (std::size_t c = 0; c < v.size(); ++c)
      f.coeffs()(static_cast<Eigen::Index>(c), static_cast<Eigen::Index>(m)) = v[c];
  }
  return f;
}

std::uint64_t fnv1a(std::span<const cplx> values, std::uint64_t h) {
  for (const cplx& z : values) {
    double parts[2] = {z.real(), z.imag()};
    unsigned char bytes[sizeof parts];
    std::memcpy(bytes, parts, sizeof parts);
    for (unsigned char b : bytes) {
      h ^= b;
      h *= 0x100000001b3ULL;
    }
  }
  return h;
}

std::string hex_digest(std::uint64_t h) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace mlab
