#include "gpsizing/bisection.hpp"

#include <map>
#include <string>

#include "gpsizing/errors.hpp"
#include "gpsizing/rng.hpp"

namespace gpsizing {
namespace {

std::uint64_t round_up(std::uint64_t n, std::uint64_t granularity) {
  return (n + granularity - 1) / granularity * granularity;
}

}  // namespace

void BisectionConfig::validate() const {
  if (runs_per_trial < 1) throw ConfigError("runs per trial must be >= 1");
  if (!(tolerance > 0.0)) throw ConfigError("bisection tolerance must be > 0");
  if (granularity < 1) throw ConfigError("granularity must be >= 1");
  if (initial_population < 1) throw ConfigError("initial population must be >= 1");
  if (population_cap <= initial_population) {
    throw ConfigError("population cap must exceed the initial population");
  }
  if (repetitions < 1) throw ConfigError("bisection repetitions must be >= 1");
  if (success_shortfall < 0) throw ConfigError("success shortfall must be >= 0");
}

BisectionResult bisect(const std::function<bool(std::uint64_t)>& predicate,
                       const BisectionConfig& cfg) {
  cfg.validate();
  BisectionResult result;
  auto probe = [&](std::uint64_t n) {
    const bool ok = predicate(n);
    result.trace.push_back({n, ok});
    return ok;
  };

  std::uint64_t lo = 0;  // largest known failure; 0 = none yet
  std::uint64_t hi = round_up(cfg.initial_population, cfg.granularity);
  while (!probe(hi)) {
    lo = hi;
    if (hi >= cfg.population_cap) {
      throw BisectionCapError("no success up to the population cap of " +
                                  std::to_string(cfg.population_cap),
                              std::move(result.trace));
    }
    hi = std::min(hi * 2, cfg.population_cap);
  }
  if (lo == 0) {
    result.n_min = hi;
    return result;
  }
  while (static_cast<double>(hi - lo) > cfg.tolerance * static_cast<double>(hi)) {
    const std::uint64_t mid = round_up(lo + (hi - lo) / 2, cfg.granularity);
    if (mid <= lo || mid >= hi) break;
    if (probe(mid)) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  result.n_min = hi;
  return result;
}

BisectionOutcome bisect_min_popsize(const ProblemSpec& problem, const GPConfig& gp_template,
                                    const BisectionConfig& cfg, std::uint64_t stream,
                                    std::size_t threads) {
  cfg.validate();
  const double threshold = problem_size(problem) - cfg.success_shortfall;
  std::map<std::uint64_t, TrialResult> trials;
  std::uint64_t probe_index = 0;
  auto predicate = [&](std::uint64_t n) {
    GPConfig gp = gp_template;
    gp.population_size = static_cast<std::size_t>(n);
    TrialResult trial = success_trial(problem, gp, cfg.runs_per_trial,
                                      derive_stream({stream, probe_index++}), threads);
    const bool ok = trial.mean_correct_bb_count >= threshold;
    trials[n] = std::move(trial);
    return ok;
  };
  BisectionResult found = bisect(predicate, cfg);

  BisectionOutcome out;
  out.n_min = found.n_min;
  out.trace = std::move(found.trace);
  const TrialResult& at_min = trials.at(out.n_min);
  out.mean_correct_bb_count = at_min.mean_correct_bb_count;
  double t_c = 0.0;
  double n_fe = 0.0;
  for (const RunStats& run : at_min.runs) {
    t_c += run.t_c;
    n_fe += static_cast<double>(run.n_fe);
  }
  out.t_c_mean = t_c / static_cast<double>(at_min.runs.size());
  out.n_fe_mean = n_fe / static_cast<double>(at_min.runs.size());
  return out;
}

}  // namespace gpsizing
