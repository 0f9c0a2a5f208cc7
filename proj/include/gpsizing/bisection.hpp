#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <vector>

#include "gpsizing/engine.hpp"
#include "gpsizing/problems.hpp"

namespace gpsizing {

struct BisectionConfig {
  std::size_t runs_per_trial = 50;
  /// A trial succeeds when the mean best correct_bb_count reaches
  /// m - success_shortfall.
  int success_shortfall = 1;
  /// Stop once (hi - lo) / hi <= tolerance.
  double tolerance = 1.0 / 16.0;
  std::uint64_t population_cap = std::uint64_t{1} << 20;
  std::uint64_t initial_population = 4;
  std::size_t repetitions = 30;
  /// Population sizes probed are multiples of this (2 keeps crossover pairs whole).
  std::uint64_t granularity = 2;

  void validate() const;
};

struct BisectionStep {
  std::uint64_t n = 0;
  bool success = false;
};

struct BisectionResult {
  std::uint64_t n_min = 0;
  std::vector<BisectionStep> trace;
};

/// Thrown when doubling reaches the population cap without a success.
class BisectionCapError : public std::runtime_error {
 public:
  BisectionCapError(const std::string& what, std::vector<BisectionStep> trace)
      : std::runtime_error(what), trace_(std::move(trace)) {}
  const std::vector<BisectionStep>& trace() const { return trace_; }

 private:
  std::vector<BisectionStep> trace_;
};

/// Doubles n from the initial value until `predicate` holds, then bisects
/// the bracket [last failure, first success]. Returns the smallest n that
/// was verified to succeed. Assumes the predicate is monotone in n.
BisectionResult bisect(const std::function<bool(std::uint64_t)>& predicate,
                       const BisectionConfig& cfg);

struct BisectionOutcome {
  std::uint64_t n_min = 0;
  std::vector<BisectionStep> trace;
  /// Statistics of the success trial at n_min.
  double mean_correct_bb_count = 0.0;
  double t_c_mean = 0.0;
  double n_fe_mean = 0.0;
};

/// Minimal population size for `problem`: each probe runs a success_trial
/// of runs_per_trial GP runs on fresh streams derived from `stream`.
BisectionOutcome bisect_min_popsize(const ProblemSpec& problem, const GPConfig& gp_template,
                                    const BisectionConfig& cfg, std::uint64_t stream,
                                    std::size_t threads = 0);

}  // namespace gpsizing
