#include "gpsizing/schema.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace gpsizing {
namespace {

std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
  if (b != 0 && a > std::numeric_limits<std::uint64_t>::max() / b) {
    throw std::overflow_error("competition size overflows 64 bits");
  }
  return a * b;
}

}  // namespace

std::uint64_t competition_size(const TreeFragment& fragment, const PrimitiveSet& prims) {
  if (fragment.function_count < 0 || fragment.terminal_count < 0 ||
      fragment.defining_length() < 1) {
    throw std::invalid_argument("fragment must define at least one symbol");
  }
  std::uint64_t kappa = 1;
  for (int i = 0; i < fragment.function_count; ++i) kappa = checked_mul(kappa, prims.chi_f());
  for (int i = 0; i < fragment.terminal_count; ++i) kappa = checked_mul(kappa, prims.chi_t());
  return kappa;
}

double fragment_quantity(int k, double lambda) {
  if (k < 1) throw std::domain_error("defining length must be >= 1");
  if (!(lambda >= 1.0)) throw std::domain_error("tree size must be >= 1");
  return std::ldexp(lambda, -k);
}

}  // namespace gpsizing
