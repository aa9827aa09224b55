#include "orbitmc/parallel/reference.hpp"

#include <algorithm>
#include <cmath>

namespace orbitmc::serial {

Mat multiply(const Mat& a, const Mat& b) {
  if (a.cols() != b.rows()) {
    throw Error(ErrorCode::DimensionMismatch, "inner dimensions differ");
  }
  Mat c(a.rows(), b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < b.cols(); ++j) {
      double s = 0.0;
      for (Eigen::Index k = 0; k < a.cols(); ++k) s += a(i, k) * b(k, j);
      c(i, j) = s;
    }
  }
  return c;
}

Mat sandwich(const Mat& a, const Mat& p, const Mat& b) { return multiply(multiply(a, p), b); }

Mat power(const Mat& a, unsigned long long t) {
  Mat result = Mat::Identity(a.rows(), a.cols());
  for (unsigned long long s = 0; s < t; ++s) result = multiply(result, a);
  return result;
}

Mat orbit_flow(const Mat& p, const OrbitPartition& part, const Distribution& pi) {
  const auto k = static_cast<Eigen::Index>(part.num_orbits());
  Mat w = Mat::Zero(k, k);
  for (Eigen::Index z = 0; z < p.rows(); ++z) {
    for (Eigen::Index y = 0; y < p.cols(); ++y) {
      const auto i = static_cast<Eigen::Index>(part.orbit_of(static_cast<std::size_t>(z)));
      const auto j = static_cast<Eigen::Index>(part.orbit_of(static_cast<std::size_t>(y)));
      w(i, j) += pi[static_cast<std::size_t>(z)] * p(z, y);
    }
  }
  return w;
}

Mat gibbs_sandwich(const Mat& p, const OrbitPartition& part, const Distribution& pi) {
  const Mat w = orbit_flow(p, part, pi);
  const Distribution masses = part.orbit_masses(pi);
  Mat out(p.rows(), p.cols());
  for (Eigen::Index x = 0; x < p.rows(); ++x) {
    for (Eigen::Index y = 0; y < p.cols(); ++y) {
      const std::size_t i = part.orbit_of(static_cast<std::size_t>(x));
      const std::size_t j = part.orbit_of(static_cast<std::size_t>(y));
      out(x, y) = pi[static_cast<std::size_t>(y)] *
                  w(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) /
                  (masses[i] * masses[j]);
    }
  }
  return out;
}

double max_tv_distance(const Mat& p, const Distribution& pi) {
  double worst = 0.0;
  for (Eigen::Index x = 0; x < p.rows(); ++x) {
    double row = 0.0;
    for (Eigen::Index y = 0; y < p.cols(); ++y) {
      row += std::abs(p(x, y) - pi[static_cast<std::size_t>(y)]);
    }
    worst = std::max(worst, 0.5 * row);
  }
  return worst;
}

}  // namespace orbitmc::serial
