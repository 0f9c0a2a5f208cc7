#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "gpsizing/bisection.hpp"
#include "gpsizing/engine.hpp"
#include "gpsizing/init.hpp"
#include "gpsizing/problems.hpp"
#include "gpsizing/sizing.hpp"

namespace gpsizing {

/// Run-count presets: desk = 20 runs / 5 bisections / 100 evaluation runs,
/// paper = 50 / 30 / 1500.
enum class Scale { kDesk, kPaper };
Scale parse_scale(std::string_view text);

struct ProblemSection {
  std::string name = "order";  // order | loud | onoff
  int m = 8;
  double p_exp = 1.0;          // onoff only
  int k = 1;                   // BB defining length used by the models
};

/// Unset fields take per-problem defaults, see resolve_init.
struct InitSection {
  InitMethod method = InitMethod::kRampedHalfHalf;
  std::optional<double> q;
  std::optional<int> height_lo;
  std::optional<int> height_hi;
  std::optional<int> max_height;
};

struct SweepSection {
  std::vector<int> m_values{4, 8, 16};
  /// Independent runs at the measured minimal n used for n_fe.
  std::size_t fe_runs = 100;
  /// "measured": lambda and n_l are means over model_sample initial trees;
  /// "analytic": expected_initial_size.
  std::string lambda_source = "measured";
  std::size_t model_sample = 10000;
  std::size_t threads = 0;  // 0 = hardware concurrency; never affects results
};

struct ExperimentConfig {
  ProblemSection problem;
  InitSection init;
  GPConfig engine;  // its init member is ignored; see resolve_init
  BisectionConfig bisection;
  SweepSection sweep;

  static ExperimentConfig defaults(Scale scale = Scale::kDesk);
  void apply_scale(Scale scale);
  /// Throws ConfigError.
  void validate() const;

  /// Canonical form; `threads` is left out so it never changes the hash.
  nlohmann::json to_json() const;
  /// Overlays `doc` on `base`. Sections: problem, init, engine, bisection,
  /// sweep. Unknown sections or keys throw ConfigError.
  static ExperimentConfig from_json(const nlohmann::json& doc, ExperimentConfig base);
  /// FNV-1a of the canonical JSON, 16 hex digits.
  std::string hash() const;
};

ExperimentConfig load_config(const std::string& path, ExperimentConfig base);

/// LOUD splits m into ceil(m/2) fours and floor(m/2) ones; ON-OFF likewise
/// for X1 and X2.
ProblemSpec make_problem(const ProblemSection& section, int m);

/// Minimum full-tree height holding `leaves` leaves on average: ceil(log2).
int min_height_for_leaves(double leaves);

/// Per-problem initialization defaults:
///   order: q = 0, heights [h_k - 1, h_k + 1] with h_k holding 2m leaves
///   onoff: q = 0, heights [h_k - 1, h_k + 1] with h_k holding m leaves
///   loud:  q = chi_t / (chi_f + chi_t) = 0.75, heights [2, 7]
InitConfig resolve_init(const ExperimentConfig& cfg, int m);

/// Height used for p_exp^h in the ON-OFF model (h_k above).
int onoff_model_height(int m);

GPConfig make_gp_config(const ExperimentConfig& cfg, int m, std::uint64_t seed);

struct ModelPrediction {
  std::string model;
  CMethod method = CMethod::kExact;
  double alpha = 0.0;
  double c = 0.0;
  double lambda = 0.0;  // mean initial tree size
  double n_l = 0.0;     // mean initial leaf count
  double n = 0.0;       // NaN when the model's preconditions fail
  std::string note;
};

/// Expected size of one initial tree under `init`; ramped methods weight
/// every height cap equally.
double expected_initial_size(const InitConfig& init);

/// Mean size and leaf count of the initial trees the models see. Measured
/// samples come from a stream fixed by (seed, m), so a sweep row can be
/// recomputed from its seed and config.
struct InitialTreeSizes {
  double lambda = 0.0;
  double n_l = 0.0;
};
InitialTreeSizes model_tree_sizes(const ExperimentConfig& cfg, int m, std::uint64_t seed);

/// Model population size for problem size m with alpha = 1/m, sigma2_bb =
/// 1/4 and d = 1.
ModelPrediction predict_popsize(const ExperimentConfig& cfg, int m, std::uint64_t seed,
                                CMethod method);
ModelPrediction predict_popsize(const ExperimentConfig& cfg, int m, CMethod method,
                                InitialTreeSizes sizes);

struct SweepRecord {
  std::string problem;
  int m = 0;
  int lambda_k = 0;
  double n_min_mean = 0.0;
  double n_min_std = 0.0;
  double t_c_mean = 0.0;
  double n_fe_mean = 0.0;
  double pred_n_exact = 0.0;
  double pred_n_tablefit = 0.0;
  std::uint64_t seed = 0;
  std::string config_hash;
  std::string timestamp;
  std::string error;  // non-empty when this m failed; not written to CSV
};

inline constexpr std::string_view kSweepCsvHeader =
    "problem,m,lambda_k,n_min_mean,n_min_std,t_c_mean,n_fe_mean,pred_n_exact,"
    "pred_n_tablefit,seed,config_hash,timestamp";

void write_sweep_header(std::ostream& out);
void write_sweep_row(std::ostream& out, const SweepRecord& record);
/// Throws std::runtime_error when the header does not match.
std::vector<SweepRecord> read_sweep_csv(std::istream& in);

/// Record for one problem size: `repetitions` bisections, then fe_runs
/// runs at the rounded mean n_min. A bisection failure is captured in
/// `error` with NaN statistics.
SweepRecord sweep_one(const ExperimentConfig& cfg, int m, std::uint64_t seed);

/// sweep_one over cfg.sweep.m_values (ascending). Each row is written and
/// flushed to `csv` as soon as it is complete.
std::vector<SweepRecord> sweep(const ExperimentConfig& cfg, std::uint64_t seed,
                               std::ostream* csv = nullptr, std::ostream* log = nullptr);

std::string utc_timestamp();

}  // namespace gpsizing
