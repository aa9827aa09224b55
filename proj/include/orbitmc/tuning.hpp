#pragma once

#include "orbitmc/kernel.hpp"
#include "orbitmc/partition.hpp"
#include "orbitmc/rng.hpp"

#include <functional>
#include <vector>

namespace orbitmc {

enum class Grouping {
  SmallestEnergy,    // the k visited states with the smallest F
  LargestEmpirical,  // the k most visited states
};

struct TuneConfig {
  std::size_t k = 2;
  std::size_t block_len = 50;
  std::size_t total_steps = 5000;
  double beta_explore = 0.0;
  double beta_target = 1.0;
  std::uint64_t seed = 0;
  std::size_t initial_state = 0;
  Grouping grouping = Grouping::SmallestEnergy;
};

void validate(const TuneConfig& cfg);

/// Partition with one merged orbit (the selected visited states) and every
/// other state a singleton.
struct LearnedAction {
  OrbitPartition partition;
  std::vector<std::size_t> merged;       // ascending
  std::vector<std::uint64_t> visits;     // per state, cumulative
  std::vector<double> merged_energy;     // F of each merged state, same order
};

struct TuneTrace {
  std::vector<LearnedAction> actions;  // one per completed block
  std::vector<std::size_t> trajectory; // state after every step
};

/// One draw from row x of the base sampler.
using StepFn = std::function<std::size_t(std::size_t, Rng&)>;

/// Grouping rule applied to what has been seen so far. Ties are broken by
/// earlier first visit, then by state index.
LearnedAction learn_partition(const std::vector<double>& energy, const std::vector<std::uint64_t>& visits,
                              const std::vector<std::size_t>& first_visit, std::size_t k, Grouping grouping);

/// Starts from G_0 = I; each block runs block_len steps of G_t P G_t as
/// Gibbs refresh, base move, Gibbs refresh, then rebuilds G_t from the
/// visits. `pi` supplies the within-orbit Gibbs weights.
TuneTrace adaptive_tune(const StepFn& base_step, const Distribution& pi, const std::vector<double>& energy,
                        const TuneConfig& cfg, Rng& rng);

/// Same, with the base move drawn from the rows of `p` and F = -log pi
/// when `energy` is empty.
TuneTrace adaptive_tune(const Kernel& p, std::vector<double> energy, const TuneConfig& cfg, Rng& rng);

struct ExploreResult {
  LearnedAction action;
  Kernel gibbs;
  Kernel sandwich;
};

/// Runs Metropolis with a uniform proposal on exp(-beta_explore H), groups
/// the visited states, freezes the partition and returns G and G P G for
/// the target kernel `p_target`, whose reference must be exp(-beta_target H).
ExploreResult exploratory_learn(const std::vector<double>& energy, const Kernel& p_target, const TuneConfig& cfg,
                                Rng& rng);

}  // namespace orbitmc
