#include "orbitmc/random_models.hpp"

#include <cmath>
#include <numbers>
#include <numeric>

namespace orbitmc {

double standard_normal(Rng& rng) {
  double u1 = rng.uniform();
  while (u1 <= 0.0) u1 = rng.uniform();
  const double u2 = rng.uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

Distribution random_distribution(std::size_t n, Rng& rng) {
  std::vector<double> logw(n);
  for (double& v : logw) v = standard_normal(rng);
  return Distribution::from_log_weights(logw);
}

OrbitPartition random_partition(std::size_t n, std::size_t k, Rng& rng) {
  if (k < 1 || k > n) throw Error(ErrorCode::InvalidArgument, "k outside 1..n");
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  for (std::size_t i = n; i > 1; --i) std::swap(order[i - 1], order[rng.below(i)]);
  std::vector<std::size_t> labels(n);
  for (std::size_t t = 0; t < n; ++t) labels[order[t]] = t % k;
  return OrbitPartition::from_labels(labels);
}

Kernel random_reversible_kernel(const Distribution& pi, Rng& rng) {
  const auto n = static_cast<Eigen::Index>(pi.size());
  Mat q(n, n);
  for (Eigen::Index x = 0; x < n; ++x) {
    for (Eigen::Index y = 0; y < n; ++y) q(x, y) = 0.05 + rng.uniform();
    q.row(x) /= q.row(x).sum();
  }
  Mat p = Mat::Zero(n, n);
  for (Eigen::Index x = 0; x < n; ++x) {
    double off = 0.0;
    for (Eigen::Index y = 0; y < n; ++y) {
      if (x == y) continue;
      const double px = pi[static_cast<std::size_t>(x)];
      const double py = pi[static_cast<std::size_t>(y)];
      const double v = q(x, y) * std::min(1.0, py * q(y, x) / (px * q(x, y)));
      p(x, y) = v;
      off += v;
    }
    p(x, x) = std::max(0.0, 1.0 - off);
  }
  return validate_kernel(std::move(p), pi);
}

}  // namespace orbitmc
