#pragma once

#include <span>
#include <utility>

namespace gpsizing {

struct LogLogFit {
  double slope = 0.0;
  double intercept = 0.0;  // natural-log intercept: ln y = intercept + slope ln x
};

/// Least-squares line through (ln x, ln y). Needs at least two points with
/// distinct x, all coordinates positive; throws std::domain_error otherwise.
LogLogFit fit_loglog_slope(std::span<const std::pair<double, double>> points);

}  // namespace gpsizing
