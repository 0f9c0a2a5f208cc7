#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "gpsizing/init.hpp"
#include "gpsizing/problems.hpp"
#include "gpsizing/rng.hpp"
#include "gpsizing/tree.hpp"

namespace gpsizing {

struct GPConfig {
  std::size_t population_size = 100;
  std::size_t tournament_size = 4;
  double crossover_probability = 1.0;
  double elite_fraction = 0.05;
  std::size_t max_nodes = 1024;
  int max_generations = 200;
  /// When set, a crossover point is an internal node with this probability
  /// (Koza uses 0.9). Unset means uniform over all nodes.
  std::optional<double> function_point_probability;
  InitConfig init;
  std::uint64_t seed = 0;
  std::uint64_t stream = 0;

  void validate() const;
};

struct RunStats {
  /// Generations evaluated, the initial population included.
  int generations = 0;
  /// Generation (0 = initial population) in which the run's best individual
  /// was first seen; equals the stopping generation when the optimum is hit.
  int t_c = 0;
  /// Fitness evaluations: population_size * generations. Elites are
  /// re-evaluated each generation.
  std::uint64_t n_fe = 0;
  Evaluation best;
  ProgramTree best_tree;
  bool optimum_found = false;
  std::vector<double> mean_size;     // per generation
  std::vector<double> best_fitness;  // best-so-far per generation
};

/// Index of the best of `size` uniform draws with replacement; ties keep the
/// earliest draw.
std::size_t tournament_select(std::span<const Evaluation> population,
                              std::size_t size, SeededRng& rng);

/// Swaps uniformly chosen subtrees. A child larger than max_nodes is
/// replaced by a copy of the parent it started from.
std::pair<ProgramTree, ProgramTree> subtree_crossover(
    const ProgramTree& a, const ProgramTree& b, std::size_t max_nodes, SeededRng& rng,
    std::optional<double> function_point_probability = std::nullopt);

/// ceil(fraction * n), at least 0 and less than n.
std::size_t elite_count(double fraction, std::size_t n);

using GenerationObserver = std::function<void(
    int generation, std::span<const ProgramTree>, std::span<const Evaluation>)>;

/// Generational GP without mutation: evaluate, keep the elites, refill by
/// tournament pairs and crossover. Stops on the optimum or at
/// max_generations.
RunStats evolve(const ProblemSpec& problem, const GPConfig& cfg,
                const GenerationObserver& observer = {});

struct TrialResult {
  double mean_correct_bb_count = 0.0;
  std::vector<RunStats> runs;  // by run index
};

/// `runs` independent evolve calls; run r uses stream derive_stream({base_stream, r}).
/// Runs execute on up to `threads` workers (0 = hardware concurrency); the
/// result does not depend on scheduling.
TrialResult success_trial(const ProblemSpec& problem, const GPConfig& cfg,
                          std::size_t runs, std::uint64_t base_stream,
                          std::size_t threads = 0);

}  // namespace gpsizing
