#include "orbitmc/distribution.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace orbitmc {

double stable_sum(std::span<const double> values) {
  double sum = 0.0;
  double comp = 0.0;
  for (double v : values) {
    const double t = sum + v;
    if (std::abs(sum) >= std::abs(v)) {
      comp += (sum - t) + v;
    } else {
      comp += (v - t) + sum;
    }
    sum = t;
  }
  return sum + comp;
}

Distribution::Distribution(std::vector<double> probs) : probs_(std::move(probs)) {
  if (probs_.empty()) {
    throw Error(ErrorCode::InvalidDistribution, "empty probability vector");
  }
  for (std::size_t i = 0; i < probs_.size(); ++i) {
    if (!(probs_[i] > 0.0) || !std::isfinite(probs_[i])) {
      throw Error(ErrorCode::InvalidDistribution,
                  "entry " + std::to_string(i) + " is not strictly positive");
    }
  }
  const double total = stable_sum(probs_);
  if (std::abs(total - 1.0) > 1e-12) {
    throw Error(ErrorCode::InvalidDistribution,
                "probabilities sum to " + std::to_string(total));
  }
}

Distribution Distribution::from_weights(std::span<const double> weights) {
  const double total = stable_sum(weights);
  std::vector<double> probs(weights.begin(), weights.end());
  for (double& p : probs) p /= total;
  return Distribution(std::move(probs));
}

Distribution Distribution::from_log_weights(std::span<const double> log_weights) {
  if (log_weights.empty()) {
    throw Error(ErrorCode::InvalidDistribution, "empty weight vector");
  }
  const double top = *std::max_element(log_weights.begin(), log_weights.end());
  std::vector<double> w(log_weights.size());
  std::transform(log_weights.begin(), log_weights.end(), w.begin(),
                 [top](double lw) { return std::exp(lw - top); });
  return from_weights(w);
}

Distribution Distribution::uniform(std::size_t n) {
  return Distribution(std::vector<double>(n, 1.0 / static_cast<double>(n)));
}

Vec Distribution::as_vector() const {
  return Eigen::Map<const Vec>(probs_.data(), static_cast<Eigen::Index>(probs_.size()));
}

bool Distribution::approx_equal(const Distribution& other, double tol) const {
  if (other.size() != size()) return false;
  for (std::size_t i = 0; i < size(); ++i) {
    if (std::abs(probs_[i] - other.probs_[i]) > tol) return false;
  }
  return true;
}

}  // namespace orbitmc
