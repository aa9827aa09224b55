#pragma once

#include "orbitmc/kernel.hpp"
#include "orbitmc/partition.hpp"

#include <array>

namespace orbitmc {

/// A k x k sampler on orbit indices with the orbit masses as reference.
/// Represented as a Kernel over those masses.
using OrbitSampler = Kernel;

/// Q(x,y) = Ptilde(i,j) pi(y)/pi(O_j) for x in O_i, y in O_j.
Kernel lift_orbit_sampler(const OrbitSampler& ps, const OrbitPartition& part, const Distribution& pi);

/// (Uf)(x) = f(orbit of x).
Vec orbit_isometry(const Vec& f, const OrbitPartition& part);
/// (U*g)(i) = pi-average of g over O_i.
Vec orbit_isometry_adjoint(const Vec& g, const OrbitPartition& part, const Distribution& pi);

/// Rows 1..k-1 jump to the heaviest orbit; the last row is
/// (pibar_1/pibar_k, ..., pibar_{k-1}/pibar_k, 2 - 1/pibar_k).
/// `pibar` must be sorted non-decreasing with last entry > 1/2.
OrbitSampler star_orbit_sampler(const Distribution& pibar);

/// k-1 lightest states as singletons plus one orbit holding the rest. Ties
/// are broken by state index.
OrbitPartition optimal_partition_for_k(const Distribution& pi, std::size_t k);

/// Residuals of the four conditions under which G P G = Pi for a partition of
/// k-1 singletons S plus one tail orbit T:
///   [0] P(x,y) = pi(y) for x, y in S
///   [1] sum_{w in T} P(x,w) = pi(T) for x in S
///   [2] sum_{z in T} pi(z) P(z,y) = pi(T) pi(y) for y in S
///   [3] sum_{z,w in T} pi(z) P(z,w) = pi(T)^2
struct ExactSamplerVerdict {
  std::array<double, 4> residuals{};
  double gpg_distance = 0.0;  // max |GPG - Pi|
  bool exact = false;
};
ExactSamplerVerdict exact_sampler_check(const Kernel& p, const OrbitPartition& part);

/// Singletons first (in partition order), tail orbit last: P(x,y) = pi(y) on
/// singleton columns; free rows fill the tail columns of singleton rows; tail
/// rows are (pi(y) - sum_z pi(z) P(z,y)) / pi(O_k).
/// `free_block` has one row per singleton and one column per tail state.
Kernel construct_exact_sampler(const OrbitPartition& part, const Distribution& pi, const Mat& free_block);

/// Throws WrongPartitionShape unless at most one orbit has more than one
/// state. Returns the index of that orbit (or the last orbit if all are
/// singletons).
std::size_t require_tail_shape(const OrbitPartition& part);

}  // namespace orbitmc
