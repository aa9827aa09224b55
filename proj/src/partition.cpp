#include "orbitmc/partition.hpp"

#include <algorithm>
#include <limits>
#include <string>

namespace orbitmc {

namespace {
constexpr std::size_t kUnassigned = std::numeric_limits<std::size_t>::max();
}

OrbitPartition::OrbitPartition(std::size_t n, std::vector<std::vector<std::size_t>> orbits)
    : orbits_(std::move(orbits)), state_to_orbit_(n, kUnassigned) {
  if (n == 0 || orbits_.empty()) {
    throw Error(ErrorCode::InvalidPartition, "partition must cover at least one state");
  }
  for (std::size_t i = 0; i < orbits_.size(); ++i) {
    auto& orbit = orbits_[i];
    if (orbit.empty()) {
      throw Error(ErrorCode::InvalidPartition, "orbit " + std::to_string(i) + " is empty");
    }
    std::sort(orbit.begin(), orbit.end());
    for (std::size_t x : orbit) {
      if (x >= n) {
        throw Error(ErrorCode::InvalidPartition, "state " + std::to_string(x) + " out of range");
      }
      if (state_to_orbit_[x] != kUnassigned) {
        throw Error(ErrorCode::InvalidPartition,
                    "state " + std::to_string(x) + " appears in two orbits");
      }
      state_to_orbit_[x] = i;
    }
  }
  for (std::size_t x = 0; x < n; ++x) {
    if (state_to_orbit_[x] == kUnassigned) {
      throw Error(ErrorCode::InvalidPartition, "state " + std::to_string(x) + " not covered");
    }
  }
}

OrbitPartition OrbitPartition::from_labels(const std::vector<std::size_t>& labels) {
  std::vector<std::vector<std::size_t>> orbits;
  std::vector<std::size_t> remap;
  std::vector<std::size_t> seen_label;
  for (std::size_t x = 0; x < labels.size(); ++x) {
    auto it = std::find(seen_label.begin(), seen_label.end(), labels[x]);
    std::size_t idx;
    if (it == seen_label.end()) {
      idx = orbits.size();
      seen_label.push_back(labels[x]);
      orbits.emplace_back();
    } else {
      idx = static_cast<std::size_t>(it - seen_label.begin());
    }
    orbits[idx].push_back(x);
  }
  return OrbitPartition(labels.size(), std::move(orbits));
}

OrbitPartition OrbitPartition::singletons(std::size_t n) {
  std::vector<std::vector<std::size_t>> orbits(n);
  for (std::size_t x = 0; x < n; ++x) orbits[x] = {x};
  return OrbitPartition(n, std::move(orbits));
}

OrbitPartition OrbitPartition::single_orbit(std::size_t n) {
  std::vector<std::size_t> all(n);
  for (std::size_t x = 0; x < n; ++x) all[x] = x;
  return OrbitPartition(n, {all});
}

std::size_t OrbitPartition::largest_orbit_size() const noexcept {
  std::size_t best = 0;
  for (const auto& o : orbits_) best = std::max(best, o.size());
  return best;
}

Distribution OrbitPartition::orbit_masses(const Distribution& pi) const {
  if (pi.size() != num_states()) {
    throw Error(ErrorCode::DimensionMismatch, "partition and distribution sizes differ");
  }
  std::vector<double> masses(orbits_.size());
  for (std::size_t i = 0; i < orbits_.size(); ++i) {
    std::vector<double> members;
    members.reserve(orbits_[i].size());
    for (std::size_t x : orbits_[i]) members.push_back(pi[x]);
    masses[i] = stable_sum(members);
  }
  // Re-normalize away the last-ulp drift of the orbit sums.
  return Distribution::from_weights(masses);
}

bool OrbitPartition::same_blocks(const OrbitPartition& other) const {
  if (other.num_states() != num_states() || other.num_orbits() != num_orbits()) return false;
  auto a = orbits_;
  auto b = other.orbits_;
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  return a == b;
}

}  // namespace orbitmc
