#pragma once

// OpenMP kernels for the dense operations that dominate run time: matrix
// products, orbit-block aggregation, the closed-form Gibbs sandwich and the
// worst-row total-variation sweep. Each has a plain serial counterpart in
// parallel/reference.hpp that the tests compare against.

#include "orbitmc/distribution.hpp"
#include "orbitmc/partition.hpp"
#include "orbitmc/types.hpp"

namespace orbitmc::parallel {

/// Below this dimension the kernels run single-threaded.
inline constexpr Eigen::Index kParallelThreshold = 64;

Mat multiply(const Mat& a, const Mat& b);

/// a * p * b.
Mat sandwich(const Mat& a, const Mat& p, const Mat& b);

/// a^t by repeated squaring; a^0 is the identity.
Mat power(const Mat& a, unsigned long long t);

/// W(i,j) = sum over z in O_i, w in O_j of pi(z) P(z,w).
Mat orbit_flow(const Mat& p, const OrbitPartition& part, const Distribution& pi);

/// GPG(x,y) = pi(y) W(O(x),O(y)) / (pi(O(x)) pi(O(y))), without forming G.
Mat gibbs_sandwich(const Mat& p, const OrbitPartition& part, const Distribution& pi);

/// max_x TV(row x of p, pi).
double max_tv_distance(const Mat& p, const Distribution& pi);

int max_threads();

}  // namespace orbitmc::parallel
