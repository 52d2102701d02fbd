#pragma once

// JSON forms. Complex numbers are [re, im] pairs; exponent infinity is the
// string "inf"; matrices are {"rows", "cols", "data"} with data in row-major
// order. Grid functions store only their nonzero components.

#include <nlohmann/json.hpp>

#include "mlab/signal.hpp"
#include "mlab/spaces.hpp"

namespace mlab {

using nlohmann::json;

json exponent_to_json(double p);
double exponent_from_json(const json& j);

json complex_to_json(cplx z);
/// Accepts a number or an [re, im] pair.
cplx complex_from_json(const json& j);
json complex_array_to_json(std::span<const cplx> values);
std::vector<cplx> complex_array_from_json(const json& j);

json model_to_json(const VectorModel& m);
VectorModel model_from_json(const json& j);

json matrix_to_json(const Eigen::MatrixXcd& m);
Eigen::MatrixXcd matrix_from_json(const json& j);

json operator_to_json(const OperatorMatrix& t);
OperatorMatrix operator_from_json(const json& j);

json grid_to_json(const GridSpec& g);
GridSpec grid_from_json(const json& j, GridSpec defaults = {});

json grid_function_to_json(const GridFunction& f);
GridFunction grid_function_from_json(const json& j);

json trig_polynomial_to_json(const TrigPolynomial& f);
TrigPolynomial trig_polynomial_from_json(const json& j);

/// 64-bit FNV-1a over the raw bytes of the array.
std::uint64_t fnv1a(std::span<const cplx> values, std::uint64_t seed = 0xcbf29ce484222325ULL);
std::string hex_digest(std::uint64_t h);

}  // namespace mlab
