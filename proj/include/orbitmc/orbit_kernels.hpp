#pragma once

#include "orbitmc/distribution.hpp"
#include "orbitmc/kernel.hpp"
#include "orbitmc/partition.hpp"

namespace orbitmc {

enum class OrbitKernelKind { Gibbs, MetropolisHastings, Barker };

const char* to_string(OrbitKernelKind kind);

/// Orbit kernel of the given kind. Each orbit is refreshed independently:
///   Gibbs   G(x,y) = pi(y) / pi(O(x))
///   MH      M(x,y) = min(1, pi(y)/pi(x)) / (|O(x)| - 1), y != x
///   Barker  B(x,y) = pi(y) / (pi(x) + pi(y)) / (|O(x)| - 1), y != x
/// with the MH/Barker diagonal set to one minus the off-diagonal row sum.
Kernel build_orbit_kernel(OrbitKernelKind kind, const OrbitPartition& part, const Distribution& pi);

Kernel identity_kernel(const Distribution& pi);
/// Pi: every row equal to pi.
Kernel stationary_kernel(const Distribution& pi);

/// q1 * p * q2 as a dense product.
Kernel sandwich(const Kernel& q1, const Kernel& p, const Kernel& q2);

/// G P G for the Gibbs kernel of `part`, using the orbit-block closed form.
Kernel gibbs_sandwich(const Kernel& p, const OrbitPartition& part);

/// Max entrywise gap between the closed-form G P G and the explicit product.
double gibbs_sandwich_cross_check(const Kernel& p, const OrbitPartition& part);

/// alpha * p + (1 - alpha) * q.
Kernel additive_mixture(double alpha, const Kernel& p, const Kernel& q);

/// (I + p) / 2.
Kernel lazify(const Kernel& p);

Kernel kernel_power(const Kernel& p, unsigned long long t);

/// Kernel product a * b (both must share pi).
Kernel compose(const Kernel& a, const Kernel& b);

/// max |K^t - G|_max for K the MH or Barker kernel of `part`.
double power_distance_to_gibbs(OrbitKernelKind kind, const OrbitPartition& part,
                               const Distribution& pi, unsigned long long t);

/// True when some orbit has two states of equal mass (within the algebraic
/// tolerance), which makes the MH block a deterministic swap.
bool has_deterministic_two_cycle(const OrbitPartition& part, const Distribution& pi);

/// Throws DimensionMismatch unless part and pi cover the same states.
void require_same_size(const OrbitPartition& part, const Distribution& pi);

}  // namespace orbitmc
