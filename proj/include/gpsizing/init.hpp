#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "gpsizing/rng.hpp"
#include "gpsizing/tree.hpp"

namespace gpsizing {

enum class InitMethod { kFull, kGrow, kRampedFull, kRampedGrow, kRampedHalfHalf };

std::string_view to_string(InitMethod method);
/// Accepts "full", "grow", "ramped-full", "ramped-grow", "ramped-half-half".
InitMethod parse_init_method(std::string_view text);

struct InitConfig {
  InitMethod method = InitMethod::kRampedHalfHalf;
  /// Probability of drawing a terminal at a position where either is allowed.
  double q = 0.5;
  int max_height = 6;
  /// Ramped methods cycle the per-tree height cap over [height_lo, height_hi].
  int height_lo = 2;
  int height_hi = 6;

  /// Throws ConfigError on an out-of-range probability or height range.
  void validate() const;
};

/// Full tree whose height is decided along the leftmost path: below the cap,
/// each level stops with probability q. All leaves then sit at that depth, so
/// the result has height h in [1, max_height] with
/// P(h) = q (1-q)^(h-1) for h < max_height.
ProgramTree create_tree_full(const PrimitiveSet& prims, double q,
                             int max_height, SeededRng& rng);

/// Not-necessarily-full tree. The root is always a function; every child
/// position becomes a terminal with probability q, or unconditionally at
/// depth max_height.
ProgramTree create_tree_grow(const PrimitiveSet& prims, double q,
                             int max_height, SeededRng& rng);

/// Single tree according to a non-ramped method (kFull or kGrow).
ProgramTree create_tree(const PrimitiveSet& prims, InitMethod method, double q,
                        int max_height, SeededRng& rng);

/// `n` trees spread as evenly as possible over the height caps
/// height_lo..height_hi; leftover trees go to the smallest caps first. For
/// half-and-half each cap's share is split FULL first, then GROW. Non-ramped
/// methods use max_height for every tree.
std::vector<ProgramTree> create_ramped_population(const PrimitiveSet& prims,
                                                  const InitConfig& cfg,
                                                  std::size_t n, SeededRng& rng);

}  // namespace gpsizing
