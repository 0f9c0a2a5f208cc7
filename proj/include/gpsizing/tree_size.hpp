#pragma once

#include <cstddef>
#include <span>

#include "gpsizing/rng.hpp"
#include "gpsizing/tree.hpp"

namespace gpsizing {

/// Expected size of a create_tree_full tree:
///   (2q - 2 [2(1-q)]^h_max + 1) / (2q - 1).
/// Returns the limit 2 h_max + 1 at q = 1/2 and 2^(h_max+1) - 1 at q = 0,
/// where every tree is full to the cap.
double avg_size_full_analytic(double q, int max_height);

/// Exact expected size of a create_tree_grow tree, from the recursion
/// E(h_max) = 1, E(d) = q + (1-q)(1 + 2 E(d+1)), size = 1 + 2 E(1).
double expected_size_grow(double q, int max_height);

/// How the per-height size distribution of GROW trees is weighted.
enum class GrowWeighting {
  /// Each (size, height) pair counts all tree shapes that realize it; with
  /// this weighting the below-cap part of the estimate is exact.
  kShapeCounted,
  /// p(s | h) = (1-q)^(f_s - 1) q^(t_s): one shape per size, as the
  /// textbook recipe writes it.
  kSingleShape,
};

struct GrowSizeEstimate {
  double mean = 0.0;
  double p_below_cap = 0.0;
  double mean_below_cap = 0.0;
  /// Conditional mean size of trees that reach the height cap, by
  /// Monte Carlo over create_tree_grow.
  double mean_at_cap = 0.0;
  double mean_at_cap_stderr = 0.0;
  std::size_t samples_at_cap = 0;
};

/// Expected GROW tree size assembled from the probability of each height
/// below the cap, the mean size per height, and a conditional Monte Carlo
/// estimate for trees of height exactly max_height. `q` must lie in (0, 1);
/// max_height is limited to 12.
GrowSizeEstimate avg_size_grow_analytic(double q, int max_height,
                                        SeededRng& rng,
                                        GrowWeighting weighting = GrowWeighting::kShapeCounted,
                                        std::size_t samples = 100000);

struct TreeStatistics {
  double mean_size = 0.0;
  double mean_height = 0.0;
  double mean_leaves = 0.0;
  std::size_t count = 0;
};

/// Exact arithmetic means. Throws std::invalid_argument on an empty list.
TreeStatistics tree_statistics(std::span<const ProgramTree> trees);

}  // namespace gpsizing
