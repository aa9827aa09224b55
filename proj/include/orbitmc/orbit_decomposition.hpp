#pragma once

#include "orbitmc/kernel.hpp"
#include "orbitmc/partition.hpp"

#include <utility>

namespace orbitmc {

/// Pbar(i,j) = (1/pi(O_i)) sum_{x in O_i, y in O_j} pi(x) P(x,y), as a kernel
/// on orbit indices whose reference is the orbit-mass vector.
Kernel projection_chain(const Kernel& p, const OrbitPartition& part);

/// P restricted to orbit i; the diagonal absorbs the mass leaving the orbit.
/// Reference is pi renormalized on the orbit.
struct RestrictionChain {
  std::size_t orbit_index;
  Kernel chain;
};
RestrictionChain restriction_chain(const Kernel& p, const OrbitPartition& part, std::size_t i);

/// max over orbits and member states of the one-step escape probability.
double gamma(const Kernel& p, const OrbitPartition& part);

struct JerrumBound {
  double bound;
  double projection_gap;   // 1 - lambda_2(Pbar)
  double min_restriction_gap;  // min_i 1 - lambda_2(P_i)
  double gamma;
};

/// min{gbar/3, gbar*gmin/(3 gamma + gbar)}, a lower bound on the right gap.
JerrumBound jerrum_gap_bound(const Kernel& p, const OrbitPartition& part);

/// (1, 1 - abar_i) with abar_i the pi-averaged probability of staying in
/// orbit i: the spectrum of the restriction of GPG to orbit i.
std::pair<double, double> gpg_restriction_spectrum(const Kernel& p, const OrbitPartition& part,
                                                   std::size_t i);

}  // namespace orbitmc
