#include "mlab/fit.hpp"

#include <cmath>

#include "mlab/error.hpp"

namespace mlab {

SlopeFit fit_slope(const std::vector<SlopeRow>& rows, double log_power) {
  require(rows.size() >= 4, ErrorKind::Domain, "slope fit needs at least 4 rows");
  for (std::size_t i = 1; i < rows.size(); ++i)
    require(rows[i].n > rows[i - 1].n, ErrorKind::Domain, "slope fit needs strictly increasing n");

  SlopeFit fit;
  std::vector<double> x, y;
  for (const auto& r : rows) {
    if (!(r.value > 0.0) || !std::isfinite(r.value)) {
      fit.notes.push_back("row n=" + std::to_string(r.n) + " excluded: nonpositive value");
      continue;
    }
    if (!(r.n > 0.0) || (log_power != 0.0 && !(r.n > 1.0))) {
      fit.notes.push_back("row n=" + std::to_string(r.n) + " excluded: logarithm undefined");
      continue;
    }
    const double ln = std::log(r.n);
    x.push_back(ln);
    y.push_back(std::log(r.value) - (log_power != 0.0 ? log_power * std::log(ln) : 0.0));
  }
  fit.used = x.size();
  require(x.size() >= 2, ErrorKind::Degenerate, "fewer than two usable rows");

  const double m = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= m;
  my /= m;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  double rss = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double e = y[i] - fit.intercept - fit.slope * x[i];
    rss += e * e;
  }
  fit.residual = std::sqrt(rss / m);
  return fit;
}

}  // namespace mlab
