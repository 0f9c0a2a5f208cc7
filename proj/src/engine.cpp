#include "gpsizing/engine.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <numeric>
#include <thread>

#include "gpsizing/errors.hpp"

namespace gpsizing {
namespace {

std::size_t pick_point(const ProgramTree& tree, SeededRng& rng,
                       std::optional<double> function_point_probability) {
  if (!function_point_probability || tree.function_count() == 0) {
    return static_cast<std::size_t>(rng.below(tree.size()));
  }
  const bool want_function = rng.bernoulli(*function_point_probability);
  const std::size_t count = want_function ? tree.function_count() : tree.leaf_count();
  std::size_t target = static_cast<std::size_t>(rng.below(count));
  for (std::size_t i = 0; i < tree.size(); ++i) {
    if (tree[i].is_function != want_function) continue;
    if (target-- == 0) return i;
  }
  return 0;
}

}  // namespace

void GPConfig::validate() const {
  if (population_size < 2) throw ConfigError("population size must be >= 2");
  if (tournament_size < 1) throw ConfigError("tournament size must be >= 1");
  if (!(crossover_probability >= 0.0 && crossover_probability <= 1.0)) {
    throw ConfigError("crossover probability must lie in [0, 1]");
  }
  if (!(elite_fraction >= 0.0 && elite_fraction < 1.0)) {
    throw ConfigError("elite fraction must lie in [0, 1)");
  }
  if (max_nodes < 3) throw ConfigError("max nodes must be >= 3");
  if (max_generations < 1) throw ConfigError("max generations must be >= 1");
  if (function_point_probability &&
      !(*function_point_probability >= 0.0 && *function_point_probability <= 1.0)) {
    throw ConfigError("function point probability must lie in [0, 1]");
  }
  init.validate();
}

std::size_t tournament_select(std::span<const Evaluation> population,
                              std::size_t size, SeededRng& rng) {
  std::size_t best = static_cast<std::size_t>(rng.below(population.size()));
  for (std::size_t i = 1; i < size; ++i) {
    const auto candidate = static_cast<std::size_t>(rng.below(population.size()));
    if (population[candidate].better_than(population[best])) best = candidate;
  }
  return best;
}

std::pair<ProgramTree, ProgramTree> subtree_crossover(
    const ProgramTree& a, const ProgramTree& b, std::size_t max_nodes, SeededRng& rng,
    std::optional<double> function_point_probability) {
  const std::size_t at_a = pick_point(a, rng, function_point_probability);
  const std::size_t at_b = pick_point(b, rng, function_point_probability);
  const std::size_t sub_a = a.subtree_end(at_a) - at_a;
  const std::size_t sub_b = b.subtree_end(at_b) - at_b;
  const std::size_t size_a = a.size() - sub_a + sub_b;
  const std::size_t size_b = b.size() - sub_b + sub_a;
  return {size_a <= max_nodes ? a.with_subtree(at_a, b, at_b) : a,
          size_b <= max_nodes ? b.with_subtree(at_b, a, at_a) : b};
}

std::size_t elite_count(double fraction, std::size_t n) {
  const double raw = std::ceil(fraction * static_cast<double>(n) - 1e-9);
  const auto count = static_cast<std::size_t>(std::max(0.0, raw));
  return std::min(count, n == 0 ? 0 : n - 1);
}

RunStats evolve(const ProblemSpec& problem, const GPConfig& cfg,
                const GenerationObserver& observer) {
  cfg.validate();
  SeededRng rng(cfg.seed, cfg.stream);
  const std::size_t n = cfg.population_size;
  const std::size_t elites = elite_count(cfg.elite_fraction, n);

  std::vector<ProgramTree> population =
      create_ramped_population(primitives(problem), cfg.init, n, rng);
  std::vector<Evaluation> evals(n);
  std::vector<std::size_t> order(n);
  RunStats stats;

  for (int gen = 0;; ++gen) {
    double total_size = 0.0;
    std::size_t gen_best = 0;
    for (std::size_t i = 0; i < n; ++i) {
      evals[i] = evaluate(problem, population[i]);
      total_size += static_cast<double>(population[i].size());
      if (evals[i].better_than(evals[gen_best])) gen_best = i;
    }
    stats.n_fe += n;
    stats.generations = gen + 1;
    if (gen == 0 || evals[gen_best].better_than(stats.best)) {
      stats.best = evals[gen_best];
      stats.best_tree = population[gen_best];
      stats.t_c = gen;
    }
    stats.mean_size.push_back(total_size / static_cast<double>(n));
    stats.best_fitness.push_back(stats.best.fitness);
    if (observer) observer(gen, population, evals);

    if (stats.best.is_optimal) {
      stats.optimum_found = true;
      break;
    }
    if (gen + 1 >= cfg.max_generations) break;

    std::vector<ProgramTree> next;
    next.reserve(n);
    if (elites > 0) {
      std::iota(order.begin(), order.end(), std::size_t{0});
      std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
        return evals[x].better_than(evals[y]);
      });
      for (std::size_t i = 0; i < elites; ++i) next.push_back(population[order[i]]);
    }
    while (next.size() < n) {
      const std::size_t p1 = tournament_select(evals, cfg.tournament_size, rng);
      const std::size_t p2 = tournament_select(evals, cfg.tournament_size, rng);
      if (rng.bernoulli(cfg.crossover_probability)) {
        auto [c1, c2] = subtree_crossover(population[p1], population[p2], cfg.max_nodes,
                                          rng, cfg.function_point_probability);
        next.push_back(std::move(c1));
        if (next.size() < n) next.push_back(std::move(c2));
      } else {
        next.push_back(population[p1]);
        if (next.size() < n) next.push_back(population[p2]);
      }
    }
    population = std::move(next);
  }
  return stats;
}

TrialResult success_trial(const ProblemSpec& problem, const GPConfig& cfg,
                          std::size_t runs, std::uint64_t base_stream,
                          std::size_t threads) {
  if (runs == 0) throw ConfigError("success trial needs at least one run");
  cfg.validate();
  TrialResult result;
  result.runs.resize(runs);

  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min(threads, runs);
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (std::size_t r = next++; r < runs; r = next++) {
      try {
        GPConfig run_cfg = cfg;
        run_cfg.stream = derive_stream({base_stream, r});
        result.runs[r] = evolve(problem, run_cfg);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  if (failure) std::rethrow_exception(failure);

  double total = 0.0;
  for (const RunStats& run : result.runs) total += run.best.correct_bb_count;
  result.mean_correct_bb_count = total / static_cast<double>(runs);
  return result;
}

}  // namespace gpsizing
