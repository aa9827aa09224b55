#pragma once

#include "orbitmc/kernel.hpp"
#include "orbitmc/orbit_kernels.hpp"
#include "orbitmc/partition.hpp"

namespace orbitmc {

/// sum_{x,y} pi(x) P(x,y) log(P(x,y)/Q(x,y)) in nats, with 0 log 0 = 0.
double kl_divergence(const Kernel& p, const Kernel& q);

/// Block coefficients of a kernel of the form Q(x,y) = c_ij pi(y)/pi(O_j).
/// `residual` is the largest entrywise gap between Q and the kernel rebuilt
/// from c; Q is in the invariant set iff residual <= membership tolerance.
struct InvariantSetCertificate {
  Mat c;
  double residual = 0.0;
  bool member = false;
};
InvariantSetCertificate invariant_set_membership(const Kernel& q, const OrbitPartition& part);

/// Largest entrywise gap between q and K q K for the orbit kernel K of `kind`.
double sandwich_fixed_residual(const Kernel& q, const OrbitPartition& part, OrbitKernelKind kind);

/// KL projection of P onto the invariant set, which is G P G.
Kernel information_projection(const Kernel& p, const OrbitPartition& part);

/// D(P||Q) - D(P||GPG) - D(GPG||Q); Q must be in the invariant set.
double pythagorean_residual(const Kernel& p, const Kernel& q, const OrbitPartition& part);

enum class Side { Left, Right };

/// D(P||Q) - D(PK||Q) (Right) or D(P||Q) - D(KP||Q) (Left), K the MH or
/// Barker orbit kernel. Q must be in the invariant set.
double dpi_gap(const Kernel& p, const Kernel& q, Side side, OrbitKernelKind kind,
               const OrbitPartition& part);

}  // namespace orbitmc
