// Command-line front end: model sizing, single runs, bisection, sweeps,
// the enumeration oracle and initial-tree statistics.

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "gpsizing/bisection.hpp"
#include "gpsizing/combinatorics.hpp"
#include "gpsizing/engine.hpp"
#include "gpsizing/errors.hpp"
#include "gpsizing/experiment.hpp"
#include "gpsizing/init.hpp"
#include "gpsizing/rng.hpp"
#include "gpsizing/sizing.hpp"
#include "gpsizing/tree.hpp"
#include "gpsizing/tree_size.hpp"

namespace fs = std::filesystem;
using namespace gpsizing;

namespace {

struct Options {
  std::uint64_t seed = 1;
  std::string config;
  std::string out = ".";
  std::string scale;
  std::string problem;
  std::optional<int> m;
  std::optional<double> p_exp;
  std::optional<int> k;
  std::vector<int> m_values;
  bool m_values_set = false;
};

ExperimentConfig build_config(const Options& opt) {
  ExperimentConfig cfg = ExperimentConfig::defaults(Scale::kDesk);
  if (!opt.config.empty()) cfg = load_config(opt.config, cfg);
  if (!opt.scale.empty()) cfg.apply_scale(parse_scale(opt.scale));
  if (!opt.problem.empty()) cfg.problem.name = opt.problem;
  if (opt.m) cfg.problem.m = *opt.m;
  if (opt.p_exp) cfg.problem.p_exp = *opt.p_exp;
  if (opt.k) cfg.problem.k = *opt.k;
  if (opt.m_values_set) cfg.sweep.m_values = opt.m_values;
  cfg.validate();
  return cfg;
}

void ensure_out(const Options& opt) { fs::create_directories(opt.out); }

int cmd_size(const Options& opt) {
  const ExperimentConfig cfg = build_config(opt);
  const int m = cfg.problem.m;
  const InitialTreeSizes sizes = model_tree_sizes(cfg, m, opt.seed);
  std::printf("model,method,m,k,lambda_k,alpha,c,lambda,n_l,n,n_even,note\n");
  for (CMethod method : {CMethod::kExact, CMethod::kTail, CMethod::kTableFit}) {
    const ModelPrediction p = predict_popsize(cfg, m, method, sizes);
    const std::string even =
        std::isfinite(p.n) ? std::to_string(round_up_even(p.n)) : std::string("nan");
    std::printf("%s,%s,%d,%d,%d,%.10g,%.10g,%.10g,%.10g,%.10g,%s,%s\n", p.model.c_str(),
                std::string(to_string(method)).c_str(), m, cfg.problem.k, 2 * m - 1, p.alpha,
                p.c, p.lambda, p.n_l, p.n, even.c_str(), p.note.c_str());
  }
  return 0;
}

int cmd_run(const Options& opt, std::optional<std::size_t> population) {
  ExperimentConfig cfg = build_config(opt);
  if (population) cfg.engine.population_size = *population;
  const int m = cfg.problem.m;
  const ProblemSpec problem = make_problem(cfg.problem, m);
  GPConfig gp = make_gp_config(cfg, m, opt.seed);
  const RunStats stats = evolve(problem, gp);

  ensure_out(opt);
  const fs::path path = fs::path(opt.out) / "run.csv";
  std::ofstream csv(path);
  csv << "generation,mean_size,best_fitness\n";
  for (std::size_t g = 0; g < stats.mean_size.size(); ++g) {
    csv << g << ',' << stats.mean_size[g] << ',' << stats.best_fitness[g] << '\n';
  }
  std::printf("generations=%d t_c=%d n_fe=%llu optimum=%s\n", stats.generations, stats.t_c,
              static_cast<unsigned long long>(stats.n_fe),
              stats.optimum_found ? "yes" : "no");
  std::printf("best fitness=%g correct=%d\n", stats.best.fitness, stats.best.correct_bb_count);
  std::printf("best tree: %s\n", to_sexpr(stats.best_tree, primitives(problem)).c_str());
  std::printf("trace written to %s\n", path.string().c_str());
  return 0;
}

int cmd_bisect(const Options& opt) {
  const ExperimentConfig cfg = build_config(opt);
  const int m = cfg.problem.m;
  const ProblemSpec problem = make_problem(cfg.problem, m);
  const GPConfig gp = make_gp_config(cfg, m, opt.seed);
  double sum = 0.0;
  for (std::size_t r = 0; r < cfg.bisection.repetitions; ++r) {
    const BisectionOutcome out =
        bisect_min_popsize(problem, gp, cfg.bisection,
                           derive_stream({opt.seed, static_cast<std::uint64_t>(m), 1, r}),
                           cfg.sweep.threads);
    std::printf("repetition %zu: n_min=%llu t_c=%.3f probes=", r,
                static_cast<unsigned long long>(out.n_min), out.t_c_mean);
    for (const BisectionStep& step : out.trace) {
      std::printf("%llu%c ", static_cast<unsigned long long>(step.n), step.success ? '+' : '-');
    }
    std::printf("\n");
    sum += static_cast<double>(out.n_min);
  }
  std::printf("mean n_min=%.3f\n", sum / static_cast<double>(cfg.bisection.repetitions));
  return 0;
}

int cmd_sweep(const Options& opt) {
  const ExperimentConfig cfg = build_config(opt);
  ensure_out(opt);
  const fs::path path = fs::path(opt.out) / ("sweep_" + cfg.problem.name + ".csv");
  std::ofstream csv(path, std::ios::binary);
  if (!csv) throw std::runtime_error("cannot write " + path.string());
  const auto rows = sweep(cfg, opt.seed, &csv, &std::cerr);
  std::printf("%zu rows written to %s\n", rows.size(), path.string().c_str());
  return 0;
}

int cmd_oracle(int m, int n_l) {
  const ExpressionDistribution closed = mean_var_expressed(m, n_l);
  const ExpressionDistribution brute = oracle_enumerate(m, n_l);
  bool same = true;
  std::printf("i,count_closed,count_enumerated,p_closed,p_enumerated\n");
  for (int i = 0; i < m; ++i) {
    const BigInt& a = closed.counts[i];
    const BigInt& b = brute.counts[i];
    same = same && a == b;
    std::printf("%d,%s,%s,%.12g,%.12g\n", i, a.str().c_str(), b.str().c_str(),
                closed.probabilities[i], brute.probabilities[i]);
  }
  std::fprintf(stderr, "m=%d n_l=%d total=%s mean=%.10f variance=%.10f q_bar=%.10f %s\n", m,
               n_l, n_total(m, n_l).str().c_str(), closed.mean, closed.variance,
               q_bar_order(m, n_l), same ? "counts agree" : "counts DIFFER");
  return same ? 0 : 1;
}

int cmd_treestats(const Options& opt, std::size_t count) {
  const ExperimentConfig cfg = build_config(opt);
  const int m = cfg.problem.m;
  const ProblemSpec problem = make_problem(cfg.problem, m);
  const InitConfig init = resolve_init(cfg, m);
  SeededRng rng(opt.seed, derive_stream({static_cast<std::uint64_t>(m), 3}));
  const auto trees = create_ramped_population(primitives(problem), init, count, rng);
  const TreeStatistics st = tree_statistics(trees);
  std::printf("init=%s q=%.4f heights=[%d,%d] max_height=%d\n",
              std::string(to_string(init.method)).c_str(), init.q, init.height_lo,
              init.height_hi, init.max_height);
  std::printf("trees=%zu mean_size=%.4f mean_height=%.4f mean_leaves=%.4f\n", st.count,
              st.mean_size, st.mean_height, st.mean_leaves);
  std::printf("expected_size=%.4f\n", expected_initial_size(init));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"GP population sizing toolkit"};
  app.require_subcommand(1);
  Options opt;
  app.add_option("--seed", opt.seed, "Master seed")->capture_default_str();
  app.add_option("--config", opt.config, "JSON config file")->check(CLI::ExistingFile);
  app.add_option("--out", opt.out, "Output directory")->capture_default_str();
  app.add_option("--scale", opt.scale, "Run-count preset")
      ->check(CLI::IsMember({"desk", "paper"}));
  app.add_option("--problem", opt.problem, "order, loud or onoff")
      ->check(CLI::IsMember({"order", "loud", "onoff"}));
  app.add_option("--m", opt.m, "Problem size");
  app.add_option("--p-exp", opt.p_exp, "ON-OFF expression probability");
  app.add_option("--k", opt.k, "Building-block defining length for the models");

  auto* size = app.add_subcommand("size", "Model population sizes for one m");
  auto* run = app.add_subcommand("run", "Single GP run");
  std::optional<std::size_t> population;
  run->add_option("-n,--population", population, "Population size");
  auto* bis = app.add_subcommand("bisect", "Bisection repetitions for one m");
  auto* sw = app.add_subcommand("sweep", "Bisection sweep over m, written as CSV");
  sw->add_option("--m-values", opt.m_values, "Problem sizes, ascending")
      ->each([&](const std::string&) { opt.m_values_set = true; });
  auto* oracle = app.add_subcommand("oracle", "Closed-form vs enumerated expression counts");
  int oracle_m = 3;
  int oracle_nl = 4;
  oracle->add_option("m", oracle_m, "Number of variables")->capture_default_str();
  oracle->add_option("n_l", oracle_nl, "Leaves per tree")->capture_default_str();
  auto* stats = app.add_subcommand("treestats", "Statistics of initial trees");
  std::size_t tree_count = 10000;
  stats->add_option("--count", tree_count, "Trees to sample")->capture_default_str();
  for (auto* sub : {size, run, bis, sw, oracle, stats}) sub->fallthrough();

  CLI11_PARSE(app, argc, argv);
  try {
    if (*size) return cmd_size(opt);
    if (*run) return cmd_run(opt, population);
    if (*bis) return cmd_bisect(opt);
    if (*sw) return cmd_sweep(opt);
    if (*oracle) return cmd_oracle(oracle_m, oracle_nl);
    if (*stats) return cmd_treestats(opt, tree_count);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
