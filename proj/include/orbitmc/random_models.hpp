#pragma once

#include "orbitmc/kernel.hpp"
#include "orbitmc/partition.hpp"
#include "orbitmc/rng.hpp"

namespace orbitmc {

/// Normal(0,1) draw by Box-Muller on Rng::uniform (portable across stdlibs).
double standard_normal(Rng& rng);

/// pi proportional to exp(Z), Z standard normal per state.
Distribution random_distribution(std::size_t n, Rng& rng);

/// k orbits of near-equal size: states are shuffled and dealt round-robin.
OrbitPartition random_partition(std::size_t n, std::size_t k, Rng& rng);

/// Metropolized random proposal: rows of the proposal are uniform(0,1)
/// weights, normalized; the result is reversible w.r.t. pi.
Kernel random_reversible_kernel(const Distribution& pi, Rng& rng);

}  // namespace orbitmc
