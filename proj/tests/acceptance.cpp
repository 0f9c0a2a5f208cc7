// Acceptance checks at desk scale, seed 1. One PASS/FAIL line per check;
// exit status 1 when any check fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "gpsizing/analysis.hpp"
#include "gpsizing/bisection.hpp"
#include "gpsizing/combinatorics.hpp"
#include "gpsizing/experiment.hpp"
#include "gpsizing/init.hpp"
#include "gpsizing/problems.hpp"
#include "gpsizing/sizing.hpp"
#include "gpsizing/tree.hpp"
#include "gpsizing/tree_size.hpp"

using namespace gpsizing;

namespace {

constexpr std::uint64_t kSeed = 1;
int failures = 0;

void report(const std::string& name, bool ok, const std::string& detail) {
  std::printf("%s %s: %s\n", ok ? "PASS" : "FAIL", name.c_str(), detail.c_str());
  std::fflush(stdout);
  if (!ok) ++failures;
}

void check(const std::string& name, const std::function<std::pair<bool, std::string>()>& body) {
  try {
    const auto [ok, detail] = body();
    report(name, ok, detail);
  } catch (const std::exception& e) {
    report(name, false, std::string("exception: ") + e.what());
  }
}

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}

std::string drop_timestamps(const std::string& csv) {
  std::istringstream in(csv);
  std::string out, line;
  while (std::getline(in, line)) out += line.substr(0, line.rfind(',')) + "\n";
  return out;
}

ExperimentConfig desk(const std::string& problem, std::vector<int> ms) {
  ExperimentConfig cfg = ExperimentConfig::defaults(Scale::kDesk);
  cfg.problem.name = problem;
  cfg.sweep.m_values = std::move(ms);
  return cfg;
}

double slope(const std::vector<SweepRecord>& rows, double SweepRecord::*field) {
  std::vector<std::pair<double, double>> pts;
  for (const auto& r : rows) pts.emplace_back(r.m, r.*field);
  return fit_loglog_slope(pts).slope;
}

std::string row_summary(const std::vector<SweepRecord>& rows) {
  std::string s;
  for (const auto& r : rows) {
    s += fmt("m=%g n_min=%.2f t_c=%.2f; ", r.m, r.n_min_mean, r.t_c_mean);
  }
  return s;
}

}  // namespace

int main() {
  check("oracle_equivalence_m4_nl6", [] {
    const auto start = std::chrono::steady_clock::now();
    bool ok = true;
    for (int m = 1; m <= 4; ++m) {
      for (int n_l = 1; n_l <= 6; ++n_l) {
        const ExpressionDistribution brute = oracle_enumerate(m, n_l);
        const ExpressionDistribution closed = mean_var_expressed(m, n_l);
        for (int i = 0; i < m; ++i) ok = ok && ways_expressed(i, m, n_l) == brute.counts[i];
        ok = ok && std::abs(closed.mean - brute.mean) < 1e-10 &&
             std::abs(closed.variance - brute.variance) < 1e-10;
      }
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return std::make_pair(ok && secs < 10.0, fmt("%.3f s", secs));
  });

  check("binomial_identities_n20_a2to5", [] {
    int bad = 0;
    for (int which = 1; which <= 5; ++which) {
      for (int n = 0; n <= 20; ++n) {
        for (int a = 2; a <= 5; ++a) {
          const IdentitySides s = binomial_identity(which, n, a);
          bad += s.lhs != s.rhs;
        }
      }
    }
    return std::make_pair(bad == 0, std::to_string(bad) + " mismatches");
  });

  check("table_fit_confidence_values", [] {
    const int ms[] = {8, 16, 32, 64, 128};
    const double cs[] = {0.97, 1.76, 2.71, 3.77, 4.89};
    double worst = 0.0;
    for (int i = 0; i < 5; ++i) {
      worst = std::max(worst, std::abs(c_from_alpha(1.0 / ms[i], CMethod::kTableFit) - cs[i]));
    }
    return std::make_pair(worst <= 0.01, fmt("max deviation %.4f", worst));
  });

  check("order_example_tree", [] {
    const OrderProblem p(4);
    const ProgramTree t =
        parse_sexpr("(JOIN (JOIN X1 ~X1) (JOIN (JOIN ~X1 X4) (JOIN X1 ~X2)))", p.primitives());
    const auto lits = express_order(t, p);
    const bool set_ok = lits.size() == 3 && lits[0].index == 1 && !lits[0].complemented &&
                        lits[1].index == 2 && lits[1].complemented && lits[2].index == 4 &&
                        !lits[2].complemented;
    const Evaluation e = fitness_order(t, p);
    return std::make_pair(set_ok && e.fitness == 2.0, fmt("fitness %g", e.fitness));
  });

  check("full_size_estimator_vs_monte_carlo", [] {
    const PrimitiveSet prims({"f"}, {"t"});
    double worst = 0.0;
    std::uint64_t stream = 0;
    for (double q : {0.3, 0.5, 0.7}) {
      for (int h : {2, 4, 6}) {
        SeededRng rng(kSeed, stream++);
        double total = 0.0;
        const int samples = 1000000;
        for (int i = 0; i < samples; ++i) total += create_tree_full(prims, q, h, rng).size();
        const double analytic = avg_size_full_analytic(q, h);
        worst = std::max(worst, std::abs(total / samples - analytic) / analytic);
      }
    }
    bool limit_ok = true;
    for (int h = 1; h <= 12; ++h) {
      limit_ok = limit_ok && std::abs(avg_size_full_analytic(0.5, h) - (2 * h + 1)) < 1e-9;
    }
    return std::make_pair(worst <= 0.01 && limit_ok,
                          fmt("max relative error %.5f, q=0.5 limit ", worst) +
                              (limit_ok ? "ok" : "wrong"));
  });

  check("general_model_reduces_to_ga", [] {
    std::mt19937_64 gen(kSeed);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
      const double c = 0.1 + 5.0 * u(gen);
      const double chi = 2.0 + std::floor(6.0 * u(gen));
      const int k = 1 + static_cast<int>(5.0 * u(gen));
      const double m = 2.0 + std::floor(100.0 * u(gen));
      const double sigma2 = 0.01 + 3.0 * u(gen);
      const double d = 0.1 + 2.0 * u(gen);
      SizingInputs in;
      in.c = c;
      in.kappa = std::pow(chi, k);
      in.sigma2_bb = sigma2;
      in.d = d;
      in.q_bar = m;
      in.p_expr = 1.0;
      in.phi = 1.0;
      const double ga = ga_popsize(c, chi, k, m, sigma2, d);
      worst = std::max(worst, std::abs(gp_popsize_general(in) - ga) / ga);
    }
    return std::make_pair(worst <= 1e-12, fmt("max relative difference %.3g", worst));
  });

  check("bisection_random_thresholds", [] {
    std::mt19937_64 gen(kSeed);
    std::uniform_int_distribution<std::uint64_t> dist(1, 10000);
    BisectionConfig cfg;
    cfg.granularity = 1;
    int bad = 0;
    for (int i = 0; i < 100; ++i) {
      const std::uint64_t t = dist(gen);
      const auto r = bisect([t](std::uint64_t n) { return n >= t; }, cfg);
      bad += r.n_min < t ||
             static_cast<double>(r.n_min - t) > cfg.tolerance * static_cast<double>(r.n_min);
    }
    return std::make_pair(bad == 0, std::to_string(bad) + " of 100 outside tolerance");
  });

  std::vector<SweepRecord> order;
  check("order_sweep_completes", [&] {
    order = sweep(desk("order", {4, 8, 16}), kSeed);
    bool ok = true;
    for (const auto& r : order) ok = ok && r.error.empty();
    return std::make_pair(ok, row_summary(order));
  });
  check("order_n_min_strictly_increasing", [&] {
    bool ok = order.size() == 3;
    for (std::size_t i = 1; i < order.size(); ++i) {
      ok = ok && order[i].n_min_mean > order[i - 1].n_min_mean;
    }
    return std::make_pair(ok, row_summary(order));
  });
  check("order_n_min_slope_1.3_to_2.7", [&] {
    const double s = slope(order, &SweepRecord::n_min_mean);
    return std::make_pair(s >= 1.3 && s <= 2.7, fmt("slope %.3f", s));
  });
  check("order_t_c_slope_0.5_to_1.5", [&] {
    const double s = slope(order, &SweepRecord::t_c_mean);
    return std::make_pair(s >= 0.5 && s <= 1.5, fmt("slope %.3f", s));
  });

  std::vector<SweepRecord> loud;
  check("loud_sweep_completes", [&] {
    loud = sweep(desk("loud", {8, 16, 32}), kSeed);
    bool ok = true;
    for (const auto& r : loud) ok = ok && r.error.empty();
    return std::make_pair(ok, row_summary(loud));
  });
  check("loud_t_c_ratio_at_most_2", [&] {
    double lo = INFINITY, hi = 0.0;
    for (const auto& r : loud) {
      lo = std::min(lo, r.t_c_mean);
      hi = std::max(hi, r.t_c_mean);
    }
    return std::make_pair(hi / lo <= 2.0, fmt("max/min %.3f", hi / lo));
  });
  check("loud_n_min_slope_at_most_1", [&] {
    const double s = slope(loud, &SweepRecord::n_min_mean);
    return std::make_pair(s <= 1.0, fmt("slope %.3f", s));
  });

  check("onoff_lower_expression_needs_no_fewer", [] {
    ExperimentConfig full = desk("onoff", {8});
    ExperimentConfig partial = full;
    partial.problem.p_exp = 0.9;
    const SweepRecord a = sweep_one(full, 8, kSeed);
    const SweepRecord b = sweep_one(partial, 8, kSeed);
    return std::make_pair(a.error.empty() && b.error.empty() && b.n_min_mean >= a.n_min_mean,
                          fmt("n_min(1.0)=%.2f n_min(0.9)=%.2f", a.n_min_mean, b.n_min_mean));
  });

  check("sweep_byte_identical", [] {
    const ExperimentConfig cfg = desk("order", {4, 8});
    std::ostringstream a, b;
    sweep(cfg, kSeed, &a);
    sweep(cfg, kSeed, &b);
    return std::make_pair(drop_timestamps(a.str()) == drop_timestamps(b.str()),
                          std::to_string(a.str().size()) + " bytes");
  });

  std::printf("%d check(s) failed\n", failures);
  return failures == 0 ? 0 : 1;
}
