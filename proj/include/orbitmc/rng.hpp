#pragma once

#include <cstdint>
#include <random>
#include <span>

namespace orbitmc {

/// mt19937_64 seeded from (seed, stream) through splitmix64, so every
/// (seed, stream) pair gives an independent, reproducible stream.
///
/// Draws are built from raw 64-bit outputs rather than the std::*_distribution
/// templates, whose algorithms differ between standard libraries.
class Rng {
 public:
  static constexpr const char* kAlgorithm = "mt19937_64+splitmix64";

  explicit Rng(std::uint64_t seed, std::uint64_t stream = 0);

  std::uint64_t next_u64() { return engine_(); }
  /// Uniform on [0, 1) with 53 random bits.
  double uniform();
  /// Uniform on {0, ..., n-1}; n must be positive.
  std::uint64_t below(std::uint64_t n);
  bool bernoulli(double p) { return uniform() < p; }
  /// Index drawn proportionally to non-negative `weights` (need not sum to 1).
  std::size_t categorical(std::span<const double> weights);

 private:
  std::mt19937_64 engine_;
};

std::uint64_t splitmix64(std::uint64_t& state);

}  // namespace orbitmc
