#include "gpsizing/analysis.hpp"

#include <cmath>
#include <stdexcept>

namespace gpsizing {

LogLogFit fit_loglog_slope(std::span<const std::pair<double, double>> points) {
  if (points.size() < 2) throw std::domain_error("log-log fit needs at least two points");
  double sx = 0.0, sy = 0.0;
  for (const auto& [x, y] : points) {
    if (!(x > 0.0) || !(y > 0.0)) {
      throw std::domain_error("log-log fit needs positive coordinates");
    }
    sx += std::log(x);
    sy += std::log(y);
  }
  const auto n = static_cast<double>(points.size());
  const double mx = sx / n;
  const double my = sy / n;
  double sxx = 0.0, sxy = 0.0;
  for (const auto& [x, y] : points) {
    const double dx = std::log(x) - mx;
    sxx += dx * dx;
    sxy += dx * (std::log(y) - my);
  }
  if (sxx == 0.0) throw std::domain_error("log-log fit needs distinct x values");
  LogLogFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  return fit;
}

}  // namespace gpsizing
