#include "gpsizing/init.hpp"

#include <cmath>

#include "gpsizing/errors.hpp"

namespace gpsizing {
namespace {

void check_args(double q, int max_height) {
  if (!(q >= 0.0 && q <= 1.0)) throw ConfigError("q must lie in [0, 1]");
  if (max_height < 1) throw ConfigError("max height must be >= 1");
}

void append_full(const PrimitiveSet& prims, int remaining, SeededRng& rng,
                 std::vector<Node>& out) {
  if (remaining == 0) {
    out.push_back({prims.draw_terminal(rng), false});
    return;
  }
  out.push_back({prims.draw_function(rng), true});
  append_full(prims, remaining - 1, rng, out);
  append_full(prims, remaining - 1, rng, out);
}

// Child slot at `depth` of a GROW tree.
void append_grow(const PrimitiveSet& prims, double q, int depth, int max_height,
                 SeededRng& rng, std::vector<Node>& out) {
  if (depth >= max_height || rng.bernoulli(q)) {
    out.push_back({prims.draw_terminal(rng), false});
    return;
  }
  out.push_back({prims.draw_function(rng), true});
  append_grow(prims, q, depth + 1, max_height, rng, out);
  append_grow(prims, q, depth + 1, max_height, rng, out);
}

}  // namespace

std::string_view to_string(InitMethod method) {
  switch (method) {
    case InitMethod::kFull: return "full";
    case InitMethod::kGrow: return "grow";
    case InitMethod::kRampedFull: return "ramped-full";
    case InitMethod::kRampedGrow: return "ramped-grow";
    case InitMethod::kRampedHalfHalf: return "ramped-half-half";
  }
  return "?";
}

InitMethod parse_init_method(std::string_view text) {
  for (InitMethod m : {InitMethod::kFull, InitMethod::kGrow, InitMethod::kRampedFull,
                       InitMethod::kRampedGrow, InitMethod::kRampedHalfHalf}) {
    if (text == to_string(m)) return m;
  }
  throw ConfigError("unknown init method '" + std::string(text) + "'");
}

void InitConfig::validate() const {
  check_args(q, max_height);
  if (height_lo < 1 || height_lo > height_hi || height_hi > max_height) {
    throw ConfigError("invalid height range [" + std::to_string(height_lo) + ", " +
                      std::to_string(height_hi) + "] for max height " +
                      std::to_string(max_height));
  }
}

ProgramTree create_tree_full(const PrimitiveSet& prims, double q,
                             int max_height, SeededRng& rng) {
  check_args(q, max_height);
  int height = 1;
  while (height < max_height && !rng.bernoulli(q)) ++height;
  std::vector<Node> nodes;
  nodes.reserve((std::size_t{2} << height) - 1);
  append_full(prims, height, rng, nodes);
  return ProgramTree(std::move(nodes));
}

ProgramTree create_tree_grow(const PrimitiveSet& prims, double q,
                             int max_height, SeededRng& rng) {
  check_args(q, max_height);
  std::vector<Node> nodes;
  nodes.push_back({prims.draw_function(rng), true});
  append_grow(prims, q, 1, max_height, rng, nodes);
  append_grow(prims, q, 1, max_height, rng, nodes);
  return ProgramTree(std::move(nodes));
}

ProgramTree create_tree(const PrimitiveSet& prims, InitMethod method, double q,
                        int max_height, SeededRng& rng) {
  switch (method) {
    case InitMethod::kFull: return create_tree_full(prims, q, max_height, rng);
    case InitMethod::kGrow: return create_tree_grow(prims, q, max_height, rng);
    default: break;
  }
  throw ConfigError("create_tree needs a non-ramped method");
}

std::vector<ProgramTree> create_ramped_population(const PrimitiveSet& prims,
                                                  const InitConfig& cfg,
                                                  std::size_t n, SeededRng& rng) {
  cfg.validate();
  if (n == 0) throw ConfigError("population size must be >= 1");
  std::vector<ProgramTree> out;
  out.reserve(n);
  if (cfg.method == InitMethod::kFull || cfg.method == InitMethod::kGrow) {
    for (std::size_t i = 0; i < n; ++i) {
      out.push_back(create_tree(prims, cfg.method, cfg.q, cfg.max_height, rng));
    }
    return out;
  }
  const auto caps = static_cast<std::size_t>(cfg.height_hi - cfg.height_lo + 1);
  for (std::size_t c = 0; c < caps; ++c) {
    const int cap = cfg.height_lo + static_cast<int>(c);
    const std::size_t count = n / caps + (c < n % caps ? 1 : 0);
    std::size_t full = 0;
    switch (cfg.method) {
      case InitMethod::kRampedFull: full = count; break;
      case InitMethod::kRampedGrow: full = 0; break;
      default: full = (count + 1) / 2; break;
    }
    for (std::size_t i = 0; i < count; ++i) {
      const InitMethod m = i < full ? InitMethod::kFull : InitMethod::kGrow;
      out.push_back(create_tree(prims, m, cfg.q, cap, rng));
    }
  }
  return out;
}

}  // namespace gpsizing
