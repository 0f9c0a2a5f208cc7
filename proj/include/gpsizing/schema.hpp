#pragma once

#include <cstdint>

#include "gpsizing/tree.hpp"

namespace gpsizing {

/// A tree-shaped similarity template, counted by its defined symbols.
struct TreeFragment {
  int function_count = 0;
  int terminal_count = 0;

  /// Defining length k = N_f + N_t.
  int defining_length() const { return function_count + terminal_count; }
};

/// Number of competing instantiations, chi_f^N_f * chi_t^N_t.
/// Throws std::invalid_argument for an empty fragment and
/// std::overflow_error when the count does not fit in 64 bits.
std::uint64_t competition_size(const TreeFragment& fragment, const PrimitiveSet& prims);

/// Expected instances of a length-k fragment in a full binary tree of size
/// lambda: 2^-k * lambda.
double fragment_quantity(int k, double lambda);

}  // namespace gpsizing
