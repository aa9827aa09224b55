#pragma once

#include "orbitmc/distribution.hpp"
#include "orbitmc/partition.hpp"
#include "orbitmc/types.hpp"

#include <optional>
#include <string>
#include <vector>

namespace orbitmc::experiments {

/// Small worked models that ship with the tool. Each has a target, an
/// orbit partition and (except for pure design inputs) a base kernel.
struct NamedExample {
  std::string name;
  std::string description;
  Distribution pi;
  std::optional<Mat> matrix;
  OrbitPartition partition;
};

/// pi = (0.3, 0.3, 0.4), orbits {1,2},{3}: sandwiching worsens the gap of the
/// restriction to {1,2} even though the projection chain is unchanged.
NamedExample three_state_example();

/// pi = (0.1, 0.2, 0.3, 0.4), orbits {1,2},{3,4}, P a Metropolis kernel on
/// which the Pythagorean identity fails for the MH sandwich.
NamedExample four_state_example();

/// pi = (0.05, 0.1, 0.2, 0.25, 0.4), orbits {1},{2},{3,4,5} and a P != Pi
/// with G P G = Pi.
NamedExample five_state_example();

/// Lazy reflecting walk on n states: holds with probability 1/2, moves to
/// each interior neighbour with 1/4 and off a boundary state with 1/2. Its
/// eigenvalues are 1/2 + 1/2 cos((m-1) pi/(n-1)). The walk is reversible
/// for (1, 2, ..., 2, 1)/(2n - 2), not for the uniform law.
NamedExample lazy_walk_example(std::size_t n);
Mat lazy_walk_matrix(std::size_t n);
Distribution lazy_walk_stationary(std::size_t n);

/// "three-state", "four-state", "five-state" or "lazy-walk-<n>".
NamedExample example_by_name(const std::string& name);
std::vector<std::string> example_names();

}  // namespace orbitmc::experiments
