#include "orbitmc/parallel/dense.hpp"

#include <algorithm>
#include <cmath>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace orbitmc::parallel {

int max_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

Mat multiply(const Mat& a, const Mat& b) {
  if (a.cols() != b.rows()) {
    throw Error(ErrorCode::DimensionMismatch, "inner dimensions differ");
  }
  const Eigen::Index rows = a.rows();
  const Eigen::Index inner = a.cols();
  const Eigen::Index cols = b.cols();
  Mat c = Mat::Zero(rows, cols);
  // i-k-j order: each thread owns whole output rows and streams rows of b.
#pragma omp parallel for schedule(static) if (rows >= kParallelThreshold)
  for (Eigen::Index i = 0; i < rows; ++i) {
    double* ci = c.row(i).data();
    for (Eigen::Index k = 0; k < inner; ++k) {
      const double aik = a(i, k);
      if (aik == 0.0) continue;
      const double* bk = b.row(k).data();
      for (Eigen::Index j = 0; j < cols; ++j) ci[j] += aik * bk[j];
    }
  }
  return c;
}

Mat sandwich(const Mat& a, const Mat& p, const Mat& b) { return multiply(multiply(a, p), b); }

Mat power(const Mat& a, unsigned long long t) {
  if (a.rows() != a.cols()) throw Error(ErrorCode::DimensionMismatch, "power of non-square matrix");
  Mat result = Mat::Identity(a.rows(), a.cols());
  Mat base = a;
  bool first = true;
  while (t > 0) {
    if (t & 1ULL) {
      result = first ? base : multiply(result, base);
      first = false;
    }
    t >>= 1ULL;
    if (t > 0) base = multiply(base, base);
  }
  return result;
}

Mat orbit_flow(const Mat& p, const OrbitPartition& part, const Distribution& pi) {
  const auto k = static_cast<Eigen::Index>(part.num_orbits());
  const auto& labels = part.labels();
  Mat w = Mat::Zero(k, k);
#pragma omp parallel for schedule(dynamic) if (p.rows() >= kParallelThreshold)
  for (Eigen::Index i = 0; i < k; ++i) {
    for (std::size_t z : part.orbit(static_cast<std::size_t>(i))) {
      const auto zi = static_cast<Eigen::Index>(z);
      for (Eigen::Index y = 0; y < p.cols(); ++y) {
        w(i, static_cast<Eigen::Index>(labels[static_cast<std::size_t>(y)])) += pi[z] * p(zi, y);
      }
    }
  }
  return w;
}

Mat gibbs_sandwich(const Mat& p, const OrbitPartition& part, const Distribution& pi) {
  const Mat w = orbit_flow(p, part, pi);
  const Distribution masses = part.orbit_masses(pi);
  const auto& labels = part.labels();
  const Eigen::Index n = p.rows();
  Mat out(n, n);
#pragma omp parallel for schedule(static) if (n >= kParallelThreshold)
  for (Eigen::Index x = 0; x < n; ++x) {
    const std::size_t i = labels[static_cast<std::size_t>(x)];
    for (Eigen::Index y = 0; y < n; ++y) {
      const std::size_t j = labels[static_cast<std::size_t>(y)];
      out(x, y) = pi[static_cast<std::size_t>(y)] * w(static_cast<Eigen::Index>(i),
                                                     static_cast<Eigen::Index>(j)) /
                  (masses[i] * masses[j]);
    }
  }
  return out;
}

double max_tv_distance(const Mat& p, const Distribution& pi) {
  const Eigen::Index n = p.rows();
  double worst = 0.0;
#pragma omp parallel for schedule(static) reduction(max : worst) if (n >= kParallelThreshold)
  for (Eigen::Index x = 0; x < n; ++x) {
    double row = 0.0;
    for (Eigen::Index y = 0; y < p.cols(); ++y) {
      row += std::abs(p(x, y) - pi[static_cast<std::size_t>(y)]);
    }
    worst = std::max(worst, 0.5 * row);
  }
  return worst;
}

}  // namespace orbitmc::parallel
