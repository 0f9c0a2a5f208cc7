#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>

namespace gpsizing {

/// Mixes a list of integers into a single 64-bit stream identifier.
///
/// Used to give every independent run its own reproducible stream, e.g.
/// `derive_stream({m, repetition, evaluation, run})`.
std::uint64_t derive_stream(std::initializer_list<std::uint64_t> parts);

/// Deterministic random source keyed by a (seed, stream) pair.
///
/// Identical pairs yield identical draw sequences on every platform: the
/// engine is mt19937_64 seeded through std::seed_seq, and the integer and
/// real helpers below avoid the implementation-defined std distributions.
class SeededRng {
 public:
  SeededRng(std::uint64_t seed, std::uint64_t stream);

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream() const { return stream_; }

  std::uint64_t next() { return engine_(); }

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  /// Uniform integer in [0, bound). `bound` must be positive.
  std::uint64_t below(std::uint64_t bound);

  bool bernoulli(double p) { return uniform() < p; }

 private:
  std::uint64_t seed_;
  std::uint64_t stream_;
  std::mt19937_64 engine_;
};

}  // namespace gpsizing
