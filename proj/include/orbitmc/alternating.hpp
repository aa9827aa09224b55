#pragma once

#include "orbitmc/kernel.hpp"
#include "orbitmc/partition.hpp"

#include <utility>
#include <vector>

namespace orbitmc {

/// T(j,i) = pi(O_i cap C_j) / sqrt(pi(O_i) pi(C_j)) for O = part1, C = part2.
struct OverlapMatrix {
  Mat t;                                // k2 x k1
  std::vector<double> singular_values;  // non-increasing
};
OverlapMatrix overlap_matrix(const OrbitPartition& part1, const OrbitPartition& part2,
                             const Distribution& pi);

/// Cosine of the angle between the orbit-constant subspaces: the largest
/// singular value of T once the unit singular values belonging to their
/// intersection are dropped (sigma_2(T) when the join is one class), and 0
/// when nothing is left.
double cosine(const OrbitPartition& part1, const OrbitPartition& part2, const Distribution& pi);

/// sqrt(1 - prod_i (1 - c_i^2)), c_i the cosine between part i and the join
/// of the later partitions.
double generalized_cosine(const std::vector<OrbitPartition>& parts, const Distribution& pi);

/// Join of the input partitions: the finest partition that every input
/// orbit sits inside. Classes are ordered by smallest member.
struct EquivalenceClasses {
  OrbitPartition classes;
  /// Each successful union (a, b) in the order performed.
  std::vector<std::pair<std::size_t, std::size_t>> unions;
};
EquivalenceClasses join_partitions(const std::vector<OrbitPartition>& parts);

/// Join classes and their Gibbs kernel, the limit of (G_1 ... G_k)^t.
std::pair<EquivalenceClasses, Kernel> limiting_projection(const std::vector<OrbitPartition>& parts,
                                                          const Distribution& pi);

/// G_1 G_2 ... G_k.
Mat alternating_product(const std::vector<OrbitPartition>& parts, const Distribution& pi);

/// || (G_1 ... G_k)^t - G_inf || on l^2(pi).
double alternating_distance(const std::vector<OrbitPartition>& parts, const Distribution& pi,
                            unsigned long long t);

/// Contiguous blocks {(i-1)k, ..., ik-1} and residue classes {j, j+m, ...},
/// i, j = 0..m-1, for n = m k.
struct GridPair {
  OrbitPartition blocks;
  OrbitPartition residues;
  /// Every block meets every residue class in the same number of states,
  /// which happens exactly when m divides k; then G_1 G_2 = Pi under the
  /// uniform distribution.
  bool exact;
};
GridPair uniform_grid_partitions(std::size_t n, std::size_t m, std::size_t k);

/// Ordered list of partitions of {0..2^d - 1} whose Gibbs kernels (uniform
/// pi) multiply to Pi. d must be a power of two, at least 2; the list has d
/// entries.
std::vector<OrbitPartition> recursive_exact_schedule(unsigned d);

/// n-1 partitions, the i-th pairing state 0 with state i.
std::vector<OrbitPartition> transposition_partitions(std::size_t n);

/// pi(x) ~ exp(beta |(x+1) mod 2k - (k+1)|) on 0..2 m^2 k - 1, the m^2 blocks
/// D_i of length 2k, and the unions O_i = D_{(i-1)m+1..im},
/// C_j = D_{j}, D_{j+m}, ..., D_{j+(m-1)m}.
struct VShapedModel {
  Distribution pi;
  OrbitPartition blocks;
  OrbitPartition part_o;
  OrbitPartition part_c;
};
VShapedModel v_shaped_model(std::size_t m, std::size_t k, double beta);

}  // namespace orbitmc
