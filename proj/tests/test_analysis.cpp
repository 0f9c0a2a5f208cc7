#include <gtest/gtest.h>

#include <cmath>
#include <stdexcept>
#include <utility>
#include <vector>

#include "gpsizing/analysis.hpp"

using gpsizing::fit_loglog_slope;
using Points = std::vector<std::pair<double, double>>;

TEST(LogLogFit, Examples) {
  EXPECT_NEAR(fit_loglog_slope(Points{{1, 1}, {2, 4}, {4, 16}}).slope, 2.0, 1e-12);
  const auto flat = fit_loglog_slope(Points{{1, 5}, {10, 5}});
  EXPECT_NEAR(flat.slope, 0.0, 1e-12);
  EXPECT_NEAR(flat.intercept, std::log(5.0), 1e-12);
}

TEST(LogLogFit, RecoversPowerLaw) {
  Points pts;
  for (double x : {3.0, 7.0, 15.0, 31.0, 63.0}) pts.emplace_back(x, 0.3 * std::pow(x, 1.7));
  const auto fit = fit_loglog_slope(pts);
  EXPECT_NEAR(fit.slope, 1.7, 1e-12);
  EXPECT_NEAR(std::exp(fit.intercept), 0.3, 1e-12);
}

TEST(LogLogFit, Errors) {
  EXPECT_THROW(fit_loglog_slope(Points{{1, 1}}), std::domain_error);
  EXPECT_THROW(fit_loglog_slope(Points{{1, 1}, {0, 2}}), std::domain_error);
  EXPECT_THROW(fit_loglog_slope(Points{{1, -1}, {2, 2}}), std::domain_error);
  EXPECT_THROW(fit_loglog_slope(Points{{2, 1}, {2, 3}}), std::domain_error);
}
