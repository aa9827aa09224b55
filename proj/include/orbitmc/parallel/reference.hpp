#pragma once

// Straight-line serial implementations of the kernels in parallel/dense.hpp.
// Kept for testing and benchmarking; never called on hot paths.

#include "orbitmc/distribution.hpp"
#include "orbitmc/partition.hpp"
#include "orbitmc/types.hpp"

namespace orbitmc::serial {

Mat multiply(const Mat& a, const Mat& b);
Mat sandwich(const Mat& a, const Mat& p, const Mat& b);
Mat power(const Mat& a, unsigned long long t);
Mat orbit_flow(const Mat& p, const OrbitPartition& part, const Distribution& pi);
Mat gibbs_sandwich(const Mat& p, const OrbitPartition& part, const Distribution& pi);
double max_tv_distance(const Mat& p, const Distribution& pi);

}  // namespace orbitmc::serial
