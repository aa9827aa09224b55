#pragma once

#include "orbitmc/types.hpp"

#include <span>
#include <vector>

namespace orbitmc {

/// Full-support probability vector over states 0..n-1.
class Distribution {
 public:
  /// Validates strict positivity and unit mass (within 1e-12).
  explicit Distribution(std::vector<double> probs);

  /// Normalizes non-negative weights first; every weight must be positive.
  static Distribution from_weights(std::span<const double> weights);
  /// Normalizes exp(log_weights) with the max subtracted for stability.
  static Distribution from_log_weights(std::span<const double> log_weights);
  static Distribution uniform(std::size_t n);

  std::size_t size() const noexcept { return probs_.size(); }
  double operator[](std::size_t i) const { return probs_[i]; }
  const std::vector<double>& probs() const noexcept { return probs_; }
  Vec as_vector() const;

  /// Entrywise equality within `tol`.
  bool approx_equal(const Distribution& other, double tol) const;

 private:
  std::vector<double> probs_;
};

/// Neumaier-compensated sum.
double stable_sum(std::span<const double> values);

}  // namespace orbitmc
