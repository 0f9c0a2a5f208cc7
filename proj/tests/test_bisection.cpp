#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "gpsizing/bisection.hpp"
#include "gpsizing/errors.hpp"

using namespace gpsizing;

namespace {

BisectionConfig unit_granularity() {
  BisectionConfig cfg;
  cfg.granularity = 1;
  return cfg;
}

}  // namespace

TEST(BisectionConfig, Validation) {
  BisectionConfig cfg;
  EXPECT_NO_THROW(cfg.validate());
  cfg.tolerance = 0.0;
  EXPECT_THROW(cfg.validate(), ConfigError);
  cfg = BisectionConfig{};
  cfg.population_cap = cfg.initial_population;
  EXPECT_THROW(cfg.validate(), ConfigError);
  cfg = BisectionConfig{};
  cfg.runs_per_trial = 0;
  EXPECT_THROW(cfg.validate(), ConfigError);
}

TEST(Bisect, ThresholdThirtySeven) {
  const auto r = bisect([](std::uint64_t n) { return n >= 37; }, unit_granularity());
  EXPECT_GE(r.n_min, 37u);
  EXPECT_LE(r.n_min, static_cast<std::uint64_t>(std::ceil(37.0 * (1.0 + 1.0 / 16.0))));
  // doubling phase: 4, 8, 16, 32 fail, 64 succeeds
  ASSERT_GE(r.trace.size(), 5u);
  EXPECT_EQ(r.trace[0].n, 4u);
  EXPECT_EQ(r.trace[4].n, 64u);
  EXPECT_TRUE(r.trace[4].success);
}

TEST(Bisect, AlwaysTrueReturnsInitial) {
  const auto r = bisect([](std::uint64_t) { return true; }, BisectionConfig{});
  EXPECT_EQ(r.n_min, 4u);
  EXPECT_EQ(r.trace.size(), 1u);
}

TEST(Bisect, AlwaysFalseHitsCap) {
  BisectionConfig cfg;
  cfg.population_cap = 100;
  try {
    bisect([](std::uint64_t) { return false; }, cfg);
    FAIL() << "expected a cap error";
  } catch (const BisectionCapError& e) {
    ASSERT_FALSE(e.trace().empty());
    EXPECT_EQ(e.trace().back().n, 100u);
    for (const auto& step : e.trace()) EXPECT_FALSE(step.success);
  }
}

TEST(Bisect, RandomThresholdsWithinTolerance) {
  std::mt19937_64 gen(2024);
  std::uniform_int_distribution<std::uint64_t> dist(1, 10000);
  const BisectionConfig cfg = unit_granularity();
  for (int i = 0; i < 100; ++i) {
    const std::uint64_t t = dist(gen);
    const auto r = bisect([t](std::uint64_t n) { return n >= t; }, cfg);
    ASSERT_GE(r.n_min, t);
    ASSERT_LE(static_cast<double>(r.n_min - t), cfg.tolerance * static_cast<double>(r.n_min))
        << "threshold " << t;
    bool verified = false;
    for (const auto& step : r.trace) verified |= step.n == r.n_min && step.success;
    ASSERT_TRUE(verified || r.n_min == cfg.initial_population);
  }
}

TEST(Bisect, EvenGranularity) {
  BisectionConfig cfg;
  for (std::uint64_t t : {5u, 37u, 101u, 999u}) {
    const auto r = bisect([t](std::uint64_t n) { return n >= t; }, cfg);
    for (const auto& step : r.trace) EXPECT_EQ(step.n % 2, 0u);
    EXPECT_GE(r.n_min, t);
    EXPECT_LE(static_cast<double>(r.n_min - t), cfg.tolerance * r.n_min + 2.0);
  }
}

TEST(BisectMinPopsize, SmallOrderIsDeterministic) {
  const ProblemSpec problem = OrderProblem(4);
  GPConfig gp;
  gp.init.q = 0.0;
  gp.init.height_lo = 2;
  gp.init.height_hi = 4;
  gp.init.max_height = 4;
  gp.seed = 3;
  BisectionConfig cfg;
  cfg.runs_per_trial = 10;
  const auto a = bisect_min_popsize(problem, gp, cfg, 17, 1);
  const auto b = bisect_min_popsize(problem, gp, cfg, 17, 2);
  EXPECT_EQ(a.n_min, b.n_min);
  EXPECT_EQ(a.t_c_mean, b.t_c_mean);
  EXPECT_GE(a.mean_correct_bb_count, 3.0);
  EXPECT_GE(a.n_min, 4u);
  EXPECT_EQ(a.n_min % 2, 0u);
}
