#include "gpsizing/tree_size.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "gpsizing/errors.hpp"
#include "gpsizing/init.hpp"

namespace gpsizing {
namespace {

constexpr int kMaxGrowAnalyticHeight = 12;

// probability[h][f]: tree of exactly height h (1 <= h < cap) with f internal
// nodes, root forced to be a function and no cap-forced terminals.
std::vector<std::vector<double>> below_cap_distribution(double q, int cap,
                                                        GrowWeighting weighting) {
  std::vector<std::vector<double>> out(static_cast<std::size_t>(cap));
  if (weighting == GrowWeighting::kSingleShape) {
    for (int h = 1; h < cap; ++h) {
      const std::size_t f_max = (std::size_t{1} << h) - 1;
      auto& row = out[static_cast<std::size_t>(h)];
      row.assign(f_max + 1, 0.0);
      for (std::size_t f = static_cast<std::size_t>(h); f <= f_max; ++f) {
        row[f] = std::pow(1.0 - q, static_cast<double>(f) - 1.0) *
                 std::pow(q, static_cast<double>(f) + 1.0);
      }
    }
    return out;
  }
  // subtree[f]: a free child slot grows a subtree of height <= h with f
  // internal nodes, summed over all shapes.
  std::vector<double> subtree{q};
  std::vector<double> prev_whole{0.0};
  for (int h = 1; h < cap; ++h) {
    const std::size_t f_max = (std::size_t{1} << h) - 1;
    std::vector<double> whole(f_max + 1, 0.0);
    for (std::size_t a = 0; a < subtree.size(); ++a) {
      if (subtree[a] == 0.0) continue;
      for (std::size_t b = 0; b < subtree.size(); ++b) {
        whole[a + b + 1] += subtree[a] * subtree[b];
      }
    }
    auto& row = out[static_cast<std::size_t>(h)];
    row.assign(f_max + 1, 0.0);
    for (std::size_t f = 0; f <= f_max; ++f) {
      const double below = f < prev_whole.size() ? prev_whole[f] : 0.0;
      row[f] = std::max(0.0, whole[f] - below);
    }
    // Next level's subtree distribution: terminal, or a function over two
    // height <= h subtrees.
    std::vector<double> next(whole.size(), 0.0);
    next[0] = q;
    for (std::size_t f = 1; f < whole.size(); ++f) next[f] = (1.0 - q) * whole[f];
    subtree = std::move(next);
    prev_whole = std::move(whole);
  }
  return out;
}

}  // namespace

double avg_size_full_analytic(double q, int max_height) {
  if (!(q >= 0.0 && q <= 1.0)) throw std::domain_error("q must lie in [0, 1]");
  if (max_height < 1) throw std::domain_error("max height must be >= 1");
  const double h = static_cast<double>(max_height);
  if (q == 0.0) return std::pow(2.0, h + 1.0) - 1.0;
  if (std::abs(2.0 * q - 1.0) < 1e-9) return 2.0 * h + 1.0;
  return (2.0 * q - 2.0 * std::pow(2.0 * (1.0 - q), h) + 1.0) / (2.0 * q - 1.0);
}

double expected_size_grow(double q, int max_height) {
  if (!(q >= 0.0 && q <= 1.0)) throw std::domain_error("q must lie in [0, 1]");
  if (max_height < 1) throw std::domain_error("max height must be >= 1");
  double e = 1.0;
  for (int d = max_height - 1; d >= 1; --d) e = q + (1.0 - q) * (1.0 + 2.0 * e);
  return 1.0 + 2.0 * e;
}

GrowSizeEstimate avg_size_grow_analytic(double q, int max_height, SeededRng& rng,
                                        GrowWeighting weighting,
                                        std::size_t samples) {
  if (!(q > 0.0 && q < 1.0)) throw std::domain_error("q must lie in (0, 1)");
  if (max_height < 1 || max_height > kMaxGrowAnalyticHeight) {
    throw std::domain_error("max height must lie in [1, 12]");
  }
  if (samples == 0) throw std::domain_error("need at least one sample");

  GrowSizeEstimate est;
  const auto dist = below_cap_distribution(q, max_height, weighting);
  double mass = 0.0;
  double weighted = 0.0;
  for (std::size_t h = 1; h < dist.size(); ++h) {
    for (std::size_t f = 0; f < dist[h].size(); ++f) {
      mass += dist[h][f];
      weighted += dist[h][f] * static_cast<double>(2 * f + 1);
    }
  }
  est.p_below_cap = std::clamp(mass, 0.0, 1.0);
  est.mean_below_cap = mass > 0.0 ? weighted / mass : 0.0;

  // Conditional Monte Carlo for trees that hit the cap. Falls back to the
  // smallest size of such a tree when the event is too rare to sample.
  const PrimitiveSet prims({"f"}, {"t"});
  const std::size_t budget = samples * 50;
  double sum = 0.0;
  double sum_sq = 0.0;
  std::size_t hits = 0;
  for (std::size_t attempt = 0; attempt < budget && hits < samples; ++attempt) {
    const ProgramTree tree = create_tree_grow(prims, q, max_height, rng);
    if (tree.height() != max_height) continue;
    const auto s = static_cast<double>(tree.size());
    sum += s;
    sum_sq += s * s;
    ++hits;
  }
  est.samples_at_cap = hits;
  if (hits == 0) {
    est.mean_at_cap = 2.0 * max_height + 1.0;
  } else {
    const auto n = static_cast<double>(hits);
    est.mean_at_cap = sum / n;
    if (hits > 1) {
      const double var = std::max(0.0, (sum_sq - n * est.mean_at_cap * est.mean_at_cap) / (n - 1.0));
      est.mean_at_cap_stderr = std::sqrt(var / n);
    }
  }
  est.mean = (1.0 - est.p_below_cap) * est.mean_at_cap +
             est.p_below_cap * est.mean_below_cap;
  return est;
}

TreeStatistics tree_statistics(std::span<const ProgramTree> trees) {
  if (trees.empty()) throw std::invalid_argument("tree_statistics needs at least one tree");
  TreeStatistics stats;
  stats.count = trees.size();
  double size = 0.0, height = 0.0, leaves = 0.0;
  for (const ProgramTree& t : trees) {
    size += static_cast<double>(t.size());
    height += static_cast<double>(t.height());
    leaves += static_cast<double>(t.leaf_count());
  }
  const auto n = static_cast<double>(trees.size());
  stats.mean_size = size / n;
  stats.mean_height = height / n;
  stats.mean_leaves = leaves / n;
  return stats;
}

}  // namespace gpsizing
