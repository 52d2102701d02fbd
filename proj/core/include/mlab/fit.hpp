#pragma once

// Least-squares slopes on log-log data with an optional log-log correction:
//   log v - log_power * log log n  ~  slope * log n + intercept.

#include <string>
#include <vector>

namespace mlab {

struct SlopeRow {
  double n = 0.0;
  double value = 0.0;
};

struct SlopeFit {
  double slope = 0.0;
  double intercept = 0.0;
  /// RMS of the fitted residuals.
  double residual = 0.0;
  std::size_t used = 0;
  std::vector<std::string> notes;
};

/// Needs >= 4 rows with strictly increasing n; rows with value <= 0 (or
/// n <= 1 when a log correction is requested) are dropped with a note.
SlopeFit fit_slope(const std::vector<SlopeRow>& rows, double log_power = 0.0);

}  // namespace mlab
