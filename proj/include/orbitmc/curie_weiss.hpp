#pragma once

#include "orbitmc/kernel.hpp"
#include "orbitmc/partition.hpp"
#include "orbitmc/rng.hpp"

#include <cstdint>
#include <vector>

namespace orbitmc {

/// Mean-field Ising model on d spins with no external field:
/// pi(x) ~ exp(beta s(x)^2 / (2d)), s(x) the spin sum. Dense states are
/// integers whose bit j set means spin j is +1.
struct CwModel {
  unsigned d;
  double beta;
};

/// Largest d for which dense 2^d-state objects are built.
inline constexpr unsigned kCwMaxDenseSpins = 14;

void require_valid(const CwModel& model);

int cw_spin_sum(std::uint64_t state, unsigned d);
/// Orbit index |s| / 2, i.e. |magnetisation| = 2i/d.
unsigned cw_orbit_index(std::uint64_t state, unsigned d);

Distribution cw_distribution(const CwModel& model);

/// Orbits ordered by i = 0..d/2; orbit i holds the states with |s| = 2i.
OrbitPartition cw_orbit_partition(unsigned d);

/// Orbit masses from exact binomial counts: C(d, d/2) for i = 0 and
/// 2 C(d, d/2 - i) for i >= 1, times exp(2 i^2 beta / d), normalized in log
/// space. Never touches the 2^d states.
std::vector<double> cw_orbit_masses(const CwModel& model);
std::vector<double> cw_orbit_log_weights(const CwModel& model);

/// max{(d+1)/4, 1}.
double beta_star(unsigned d);

/// Singleton blocks O_0, ..., O_{kcut-1} and the merged tail O_kcut u ... u O_{d/2}.
OrbitPartition merged_tail_partition(unsigned d, unsigned kcut);

/// Mass of the merged tail block.
double cw_tail_mass(const CwModel& model, unsigned kcut);

/// Smallest kcut in 1..d/2 whose tail mass exceeds 1/2 + min_delta.
/// Throws MassNotDominant if none does.
unsigned choose_kcut(const CwModel& model, double min_delta = 0.05);

/// Lifted star sampler over the merged blocks, B the tail block:
///   pi(y)/pi(B)                     if exactly one of x, y is in B
///   pi(y)(2 pi(B) - 1)/pi(B)^2      if both are in B
///   0                               otherwise.
Kernel cw_star_kernel(const CwModel& model, unsigned kcut);

/// Streaming version of cw_star_kernel on spin vectors (+1/-1).
class CwStarSampler {
 public:
  CwStarSampler(const CwModel& model, unsigned kcut);

  /// One transition from `spins`, written back in place.
  void step(std::vector<int>& spins, Rng& rng) const;
  /// Same transition on the bit encoding (d <= 63).
  std::uint64_t step(std::uint64_t state, Rng& rng) const;

  double tail_mass() const noexcept { return tail_mass_; }
  unsigned kcut() const noexcept { return kcut_; }

 private:
  unsigned draw_orbit(bool into_tail, Rng& rng) const;
  void fill_uniform(unsigned orbit, std::vector<int>& spins, Rng& rng) const;

  unsigned d_;
  unsigned kcut_;
  std::vector<double> masses_;
  double tail_mass_;
};

/// Single-site Metropolis: pick a spin uniformly, flip it, accept with
/// min(1, pi(x')/pi(x)).
Kernel glauber_kernel(const CwModel& model);

/// Smallest t >= 1 with max_x TV(P^t(x,.), pi) < eps. Uses the stored powers
/// P^{2^j} and binary lifting, which is valid because the worst-row TV
/// distance is non-increasing in t. Throws NoConvergence past 10^6.
unsigned long long mixing_time_exact(const Kernel& p, double eps);

/// (1/(2 delta)) (d beta/2 + d log 2 - log eps).
double star_mixing_upper_bound(const CwModel& model, double delta, double eps);
/// (e^{beta d}/4^d - 1) log(1/(2 eps)).
double glauber_mixing_lower_bound(const CwModel& model, double eps);
/// (1/(1 - lambda_2) - 1) log(1/(2 eps)) for a reversible kernel.
double relaxation_mixing_lower_bound(const Kernel& p, double eps);

}  // namespace orbitmc
