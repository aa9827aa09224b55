#pragma once

#include "orbitmc/distribution.hpp"
#include "orbitmc/types.hpp"

#include <vector>

namespace orbitmc {

/// A partition of {0..n-1} into nonempty disjoint orbits. This is the only
/// representation of a group action the library keeps: the orbit kernels
/// depend on the group solely through its orbits.
class OrbitPartition {
 public:
  /// Orbits are kept in the given order; members are sorted ascending.
  OrbitPartition(std::size_t n, std::vector<std::vector<std::size_t>> orbits);

  /// Builds from per-state labels; orbits are ordered by first appearance.
  static OrbitPartition from_labels(const std::vector<std::size_t>& labels);
  static OrbitPartition singletons(std::size_t n);
  static OrbitPartition single_orbit(std::size_t n);

  std::size_t num_states() const noexcept { return state_to_orbit_.size(); }
  std::size_t num_orbits() const noexcept { return orbits_.size(); }
  const std::vector<std::vector<std::size_t>>& orbits() const noexcept { return orbits_; }
  const std::vector<std::size_t>& orbit(std::size_t i) const { return orbits_.at(i); }
  std::size_t orbit_of(std::size_t state) const { return state_to_orbit_.at(state); }
  const std::vector<std::size_t>& labels() const noexcept { return state_to_orbit_; }

  bool all_singletons() const noexcept { return orbits_.size() == state_to_orbit_.size(); }
  std::size_t largest_orbit_size() const noexcept;

  /// Orbit masses pi(O_1), ..., pi(O_k) as a distribution over orbit indices.
  Distribution orbit_masses(const Distribution& pi) const;

  /// Same blocks regardless of orbit order.
  bool same_blocks(const OrbitPartition& other) const;

  friend bool operator==(const OrbitPartition& a, const OrbitPartition& b) {
    return a.orbits_ == b.orbits_;
  }

 private:
  std::vector<std::vector<std::size_t>> orbits_;
  std::vector<std::size_t> state_to_orbit_;
};

}  // namespace orbitmc
