#include "gpsizing/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <set>
#include <sstream>
#include <stdexcept>

#include "gpsizing/combinatorics.hpp"
#include "gpsizing/errors.hpp"
#include "gpsizing/rng.hpp"
#include "gpsizing/tree_size.hpp"

namespace gpsizing {
namespace {

using nlohmann::json;

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

void check_keys(const json& section, std::string_view name,
                std::initializer_list<std::string_view> allowed) {
  if (!section.is_object()) {
    throw ConfigError("config section '" + std::string(name) + "' must be an object");
  }
  for (const auto& [key, value] : section.items()) {
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
      throw ConfigError("unknown key '" + key + "' in section '" + std::string(name) + "'");
    }
  }
}

template <typename T>
void read(const json& section, const char* key, T& out) {
  if (auto it = section.find(key); it != section.end()) it->get_to(out);
}

template <typename T>
void read(const json& section, const char* key, std::optional<T>& out) {
  if (auto it = section.find(key); it != section.end()) {
    if (it->is_null()) {
      out.reset();
    } else {
      out = it->get<T>();
    }
  }
}

template <typename T>
json optional_json(const std::optional<T>& v) {
  return v ? json(*v) : json(nullptr);
}

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

double mean_of(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

double sample_std(const std::vector<double>& v) {
  if (v.size() < 2) return 0.0;
  const double mu = mean_of(v);
  double s = 0.0;
  for (double x : v) s += (x - mu) * (x - mu);
  return std::sqrt(s / static_cast<double>(v.size() - 1));
}

}  // namespace

Scale parse_scale(std::string_view text) {
  if (text == "desk") return Scale::kDesk;
  if (text == "paper") return Scale::kPaper;
  throw ConfigError("unknown scale '" + std::string(text) + "' (expected desk or paper)");
}

ExperimentConfig ExperimentConfig::defaults(Scale scale) {
  ExperimentConfig cfg;
  cfg.apply_scale(scale);
  return cfg;
}

void ExperimentConfig::apply_scale(Scale scale) {
  if (scale == Scale::kPaper) {
    bisection.runs_per_trial = 50;
    bisection.repetitions = 30;
    sweep.fe_runs = 1500;
  } else {
    bisection.runs_per_trial = 20;
    bisection.repetitions = 5;
    sweep.fe_runs = 100;
  }
}

void ExperimentConfig::validate() const {
  static const std::set<std::string> names{"order", "loud", "onoff"};
  if (!names.contains(problem.name)) {
    throw ConfigError("unknown problem '" + problem.name + "'");
  }
  if (problem.m < 1) throw ConfigError("m must be >= 1");
  if (!(problem.p_exp > 0.0 && problem.p_exp <= 1.0)) {
    throw ConfigError("p_exp must lie in (0, 1]");
  }
  if (problem.k < 1) throw ConfigError("k must be >= 1");
  if (init.q && !(*init.q >= 0.0 && *init.q <= 1.0)) throw ConfigError("q must lie in [0, 1]");
  engine.validate();
  bisection.validate();
  if (sweep.fe_runs < 1) throw ConfigError("fe_runs must be >= 1");
  if (sweep.lambda_source != "measured" && sweep.lambda_source != "analytic") {
    throw ConfigError("lambda_source must be measured or analytic");
  }
  if (sweep.model_sample < 1) throw ConfigError("model_sample must be >= 1");
  for (std::size_t i = 0; i < sweep.m_values.size(); ++i) {
    if (sweep.m_values[i] < 1) throw ConfigError("m values must be >= 1");
    if (i > 0 && sweep.m_values[i] <= sweep.m_values[i - 1]) {
      throw ConfigError("m values must be strictly ascending");
    }
  }
  // heights are checked once resolved against m
  resolve_init(*this, problem.m).validate();
}

json ExperimentConfig::to_json() const {
  json doc;
  doc["problem"] = {{"name", problem.name},
                    {"m", problem.m},
                    {"p_exp", problem.p_exp},
                    {"k", problem.k}};
  doc["init"] = {{"method", std::string(to_string(init.method))},
                 {"q", optional_json(init.q)},
                 {"height_lo", optional_json(init.height_lo)},
                 {"height_hi", optional_json(init.height_hi)},
                 {"max_height", optional_json(init.max_height)}};
  doc["engine"] = {{"population_size", engine.population_size},
                   {"tournament_size", engine.tournament_size},
                   {"crossover_probability", engine.crossover_probability},
                   {"elite_fraction", engine.elite_fraction},
                   {"max_nodes", engine.max_nodes},
                   {"max_generations", engine.max_generations},
                   {"function_point_probability",
                    optional_json(engine.function_point_probability)}};
  doc["bisection"] = {{"runs_per_trial", bisection.runs_per_trial},
                      {"success_shortfall", bisection.success_shortfall},
                      {"tolerance", bisection.tolerance},
                      {"population_cap", bisection.population_cap},
                      {"initial_population", bisection.initial_population},
                      {"repetitions", bisection.repetitions},
                      {"granularity", bisection.granularity}};
  doc["sweep"] = {{"m_values", sweep.m_values},
                  {"fe_runs", sweep.fe_runs},
                  {"lambda_source", sweep.lambda_source},
                  {"model_sample", sweep.model_sample}};
  return doc;
}

ExperimentConfig ExperimentConfig::from_json(const json& doc, ExperimentConfig cfg) {
  check_keys(doc, "root", {"problem", "init", "engine", "bisection", "sweep"});
  try {
    if (auto it = doc.find("problem"); it != doc.end()) {
      check_keys(*it, "problem", {"name", "m", "p_exp", "k"});
      read(*it, "name", cfg.problem.name);
      read(*it, "m", cfg.problem.m);
      read(*it, "p_exp", cfg.problem.p_exp);
      read(*it, "k", cfg.problem.k);
    }
    if (auto it = doc.find("init"); it != doc.end()) {
      check_keys(*it, "init", {"method", "q", "height_lo", "height_hi", "max_height"});
      if (auto m = it->find("method"); m != it->end()) {
        cfg.init.method = parse_init_method(m->get<std::string>());
      }
      read(*it, "q", cfg.init.q);
      read(*it, "height_lo", cfg.init.height_lo);
      read(*it, "height_hi", cfg.init.height_hi);
      read(*it, "max_height", cfg.init.max_height);
    }
    if (auto it = doc.find("engine"); it != doc.end()) {
      check_keys(*it, "engine",
                 {"population_size", "tournament_size", "crossover_probability",
                  "elite_fraction", "max_nodes", "max_generations",
                  "function_point_probability"});
      read(*it, "population_size", cfg.engine.population_size);
      read(*it, "tournament_size", cfg.engine.tournament_size);
      read(*it, "crossover_probability", cfg.engine.crossover_probability);
      read(*it, "elite_fraction", cfg.engine.elite_fraction);
      read(*it, "max_nodes", cfg.engine.max_nodes);
      read(*it, "max_generations", cfg.engine.max_generations);
      read(*it, "function_point_probability", cfg.engine.function_point_probability);
    }
    if (auto it = doc.find("bisection"); it != doc.end()) {
      check_keys(*it, "bisection",
                 {"runs_per_trial", "success_shortfall", "tolerance", "population_cap",
                  "initial_population", "repetitions", "granularity"});
      read(*it, "runs_per_trial", cfg.bisection.runs_per_trial);
      read(*it, "success_shortfall", cfg.bisection.success_shortfall);
      read(*it, "tolerance", cfg.bisection.tolerance);
      read(*it, "population_cap", cfg.bisection.population_cap);
      read(*it, "initial_population", cfg.bisection.initial_population);
      read(*it, "repetitions", cfg.bisection.repetitions);
      read(*it, "granularity", cfg.bisection.granularity);
    }
    if (auto it = doc.find("sweep"); it != doc.end()) {
      check_keys(*it, "sweep",
                 {"m_values", "fe_runs", "lambda_source", "model_sample", "threads"});
      read(*it, "m_values", cfg.sweep.m_values);
      read(*it, "fe_runs", cfg.sweep.fe_runs);
      read(*it, "lambda_source", cfg.sweep.lambda_source);
      read(*it, "model_sample", cfg.sweep.model_sample);
      read(*it, "threads", cfg.sweep.threads);
    }
  } catch (const json::exception& e) {
    throw ConfigError(std::string("bad config value: ") + e.what());
  }
  return cfg;
}

std::string ExperimentConfig::hash() const {
  const std::string text = to_json().dump();
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : text) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

ExperimentConfig load_config(const std::string& path, ExperimentConfig base) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path);
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError(path + ": " + e.what());
  }
  return ExperimentConfig::from_json(doc, std::move(base));
}

ProblemSpec make_problem(const ProblemSection& section, int m) {
  const int half_up = (m + 1) / 2;
  if (section.name == "order") return OrderProblem(m);
  if (section.name == "loud") return LoudProblem(half_up, m - half_up);
  if (section.name == "onoff") return OnOffProblem(half_up, m - half_up, section.p_exp);
  throw ConfigError("unknown problem '" + section.name + "'");
}

int min_height_for_leaves(double leaves) {
  int h = 0;
  while (std::ldexp(1.0, h) < leaves) ++h;
  return h;
}

int onoff_model_height(int m) { return std::max(1, min_height_for_leaves(m)); }

InitConfig resolve_init(const ExperimentConfig& cfg, int m) {
  InitConfig init;
  init.method = cfg.init.method;
  int lo = 2;
  int hi = 7;
  double q = 0.0;
  if (cfg.problem.name == "order") {
    const int h = std::max(1, min_height_for_leaves(2.0 * m));
    lo = std::max(1, h - 1);
    hi = h + 1;
  } else if (cfg.problem.name == "onoff") {
    const int h = onoff_model_height(m);
    lo = std::max(1, h - 1);
    hi = h + 1;
  } else {
    q = primitives(make_problem(cfg.problem, m)).default_terminal_probability();
  }
  init.q = cfg.init.q.value_or(q);
  init.height_lo = cfg.init.height_lo.value_or(lo);
  init.height_hi = cfg.init.height_hi.value_or(hi);
  init.max_height = cfg.init.max_height.value_or(init.height_hi);
  return init;
}

GPConfig make_gp_config(const ExperimentConfig& cfg, int m, std::uint64_t seed) {
  GPConfig gp = cfg.engine;
  gp.init = resolve_init(cfg, m);
  gp.seed = seed;
  gp.stream = 0;
  return gp;
}

double expected_initial_size(const InitConfig& init) {
  init.validate();
  auto full = [&](int h) { return avg_size_full_analytic(init.q, h); };
  auto grow = [&](int h) { return expected_size_grow(init.q, h); };
  switch (init.method) {
    case InitMethod::kFull:
      return full(init.max_height);
    case InitMethod::kGrow:
      return grow(init.max_height);
    default:
      break;
  }
  double total = 0.0;
  for (int h = init.height_lo; h <= init.height_hi; ++h) {
    if (init.method == InitMethod::kRampedFull) {
      total += full(h);
    } else if (init.method == InitMethod::kRampedGrow) {
      total += grow(h);
    } else {
      total += 0.5 * (full(h) + grow(h));
    }
  }
  return total / static_cast<double>(init.height_hi - init.height_lo + 1);
}

InitialTreeSizes model_tree_sizes(const ExperimentConfig& cfg, int m, std::uint64_t seed) {
  const InitConfig init = resolve_init(cfg, m);
  InitialTreeSizes sizes;
  if (cfg.sweep.lambda_source == "analytic") {
    sizes.lambda = expected_initial_size(init);
    sizes.n_l = (sizes.lambda + 1.0) / 2.0;
    return sizes;
  }
  const ProblemSpec problem = make_problem(cfg.problem, m);
  SeededRng rng(seed, derive_stream({static_cast<std::uint64_t>(m), 3}));
  const auto trees = create_ramped_population(primitives(problem), init,
                                              cfg.sweep.model_sample, rng);
  const TreeStatistics st = tree_statistics(trees);
  sizes.lambda = st.mean_size;
  sizes.n_l = st.mean_leaves;
  return sizes;
}

ModelPrediction predict_popsize(const ExperimentConfig& cfg, int m, std::uint64_t seed,
                                CMethod method) {
  return predict_popsize(cfg, m, method, model_tree_sizes(cfg, m, seed));
}

ModelPrediction predict_popsize(const ExperimentConfig& cfg, int m, CMethod method,
                                InitialTreeSizes sizes) {
  constexpr double kSigma2 = 0.25;
  constexpr double kSignal = 1.0;
  ModelPrediction p;
  p.model = cfg.problem.name;
  p.method = method;
  p.alpha = 1.0 / m;
  p.lambda = sizes.lambda;
  p.n_l = sizes.n_l;
  p.n = kNaN;
  const int k = cfg.problem.k;
  try {
    p.c = c_from_alpha(p.alpha, method);
    if (cfg.problem.name == "order") {
      p.n = order_popsize(k, p.c, kSigma2, kSignal, m, p.n_l, p.lambda);
    } else if (cfg.problem.name == "loud") {
      p.n = loud_popsize(k, p.c, kSigma2, kSignal, p.lambda);
    } else {
      p.n = onoff_popsize(k, p.c, kSigma2, kSignal, p.lambda, cfg.problem.p_exp,
                          onoff_model_height(m));
    }
  } catch (const std::exception& e) {
    p.n = kNaN;
    p.note = e.what();
  }
  return p;
}

void write_sweep_header(std::ostream& out) { out << kSweepCsvHeader << '\n'; }

void write_sweep_row(std::ostream& out, const SweepRecord& r) {
  out << r.problem << ',' << r.m << ',' << r.lambda_k << ',' << format_double(r.n_min_mean)
      << ',' << format_double(r.n_min_std) << ',' << format_double(r.t_c_mean) << ','
      << format_double(r.n_fe_mean) << ',' << format_double(r.pred_n_exact) << ','
      << format_double(r.pred_n_tablefit) << ',' << r.seed << ',' << r.config_hash << ','
      << r.timestamp << '\n';
}

std::vector<SweepRecord> read_sweep_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != kSweepCsvHeader) {
    throw std::runtime_error("sweep CSV header mismatch");
  }
  std::vector<SweepRecord> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> f;
    std::stringstream ss(line);
    for (std::string cell; std::getline(ss, cell, ',');) f.push_back(cell);
    if (f.size() != 12) throw std::runtime_error("sweep CSV row has wrong field count");
    SweepRecord r;
    r.problem = f[0];
    r.m = std::stoi(f[1]);
    r.lambda_k = std::stoi(f[2]);
    r.n_min_mean = std::strtod(f[3].c_str(), nullptr);
    r.n_min_std = std::strtod(f[4].c_str(), nullptr);
    r.t_c_mean = std::strtod(f[5].c_str(), nullptr);
    r.n_fe_mean = std::strtod(f[6].c_str(), nullptr);
    r.pred_n_exact = std::strtod(f[7].c_str(), nullptr);
    r.pred_n_tablefit = std::strtod(f[8].c_str(), nullptr);
    r.seed = std::stoull(f[9]);
    r.config_hash = f[10];
    r.timestamp = f[11];
    rows.push_back(std::move(r));
  }
  return rows;
}

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

SweepRecord sweep_one(const ExperimentConfig& cfg, int m, std::uint64_t seed) {
  SweepRecord rec;
  rec.problem = cfg.problem.name;
  rec.m = m;
  rec.lambda_k = 2 * m - 1;
  rec.seed = seed;
  rec.config_hash = cfg.hash();
  const InitialTreeSizes sizes = model_tree_sizes(cfg, m, seed);
  rec.pred_n_exact = predict_popsize(cfg, m, CMethod::kExact, sizes).n;
  rec.pred_n_tablefit = predict_popsize(cfg, m, CMethod::kTableFit, sizes).n;

  const ProblemSpec problem = make_problem(cfg.problem, m);
  const GPConfig gp = make_gp_config(cfg, m, seed);
  const auto um = static_cast<std::uint64_t>(m);
  try {
    std::vector<double> n_min;
    std::vector<double> t_c;
    for (std::size_t r = 0; r < cfg.bisection.repetitions; ++r) {
      const BisectionOutcome out = bisect_min_popsize(
          problem, gp, cfg.bisection, derive_stream({seed, um, 1, r}), cfg.sweep.threads);
      n_min.push_back(static_cast<double>(out.n_min));
      t_c.push_back(out.t_c_mean);
    }
    rec.n_min_mean = mean_of(n_min);
    rec.n_min_std = sample_std(n_min);
    rec.t_c_mean = mean_of(t_c);

    GPConfig at_min = gp;
    const auto g = cfg.bisection.granularity;
    const auto n = static_cast<std::uint64_t>(std::ceil(rec.n_min_mean));
    at_min.population_size = static_cast<std::size_t>((n + g - 1) / g * g);
    const TrialResult fe = success_trial(problem, at_min, cfg.sweep.fe_runs,
                                         derive_stream({seed, um, 2}), cfg.sweep.threads);
    double total = 0.0;
    for (const RunStats& run : fe.runs) total += static_cast<double>(run.n_fe);
    rec.n_fe_mean = total / static_cast<double>(fe.runs.size());
  } catch (const std::exception& e) {
    rec.n_min_mean = rec.n_min_std = rec.t_c_mean = rec.n_fe_mean = kNaN;
    rec.error = e.what();
  }
  return rec;
}

std::vector<SweepRecord> sweep(const ExperimentConfig& cfg, std::uint64_t seed,
                               std::ostream* csv, std::ostream* log) {
  cfg.validate();
  if (csv) {
    write_sweep_header(*csv);
    csv->flush();
  }
  std::vector<SweepRecord> rows;
  for (int m : cfg.sweep.m_values) {
    SweepRecord rec = sweep_one(cfg, m, seed);
    rec.timestamp = utc_timestamp();
    if (log) {
      *log << rec.problem << " m=" << m << " n_min=" << format_double(rec.n_min_mean)
           << " t_c=" << format_double(rec.t_c_mean)
           << " n_fe=" << format_double(rec.n_fe_mean);
      if (!rec.error.empty()) *log << " error: " << rec.error;
      *log << std::endl;
    }
    if (csv) {
      write_sweep_row(*csv, rec);
      csv->flush();
    }
    rows.push_back(std::move(rec));
  }
  return rows;
}

}  // namespace gpsizing
