#pragma once

#include "orbitmc/distribution.hpp"
#include "orbitmc/types.hpp"

namespace orbitmc {

enum class Flag { Unchecked, Yes, No };

/// Dense row-stochastic transition matrix together with the distribution it
/// is meant to preserve. Immutable once built; construct through
/// validate_kernel (or the builders in orbit_kernels.hpp, which go through it).
class Kernel {
 public:
  std::size_t size() const noexcept { return static_cast<std::size_t>(matrix_.rows()); }
  const Mat& matrix() const noexcept { return matrix_; }
  const Distribution& pi() const noexcept { return pi_; }
  double operator()(std::size_t x, std::size_t y) const {
    return matrix_(static_cast<Eigen::Index>(x), static_cast<Eigen::Index>(y));
  }

  Flag row_stochastic() const noexcept { return row_stochastic_; }
  Flag stationary() const noexcept { return stationary_; }
  Flag reversible() const noexcept { return reversible_; }
  bool is_stationary() const noexcept { return stationary_ == Flag::Yes; }
  bool is_reversible() const noexcept { return reversible_ == Flag::Yes; }

 private:
  friend Kernel validate_kernel(Mat matrix, const Distribution& pi);
  Kernel(Mat matrix, Distribution pi) : matrix_(std::move(matrix)), pi_(std::move(pi)) {}

  Mat matrix_;
  Distribution pi_;
  Flag row_stochastic_ = Flag::Unchecked;
  Flag stationary_ = Flag::Unchecked;
  Flag reversible_ = Flag::Unchecked;
};

/// Checks row-stochasticity (throws NonStochastic / DimensionMismatch) and
/// records whether the matrix is stationary and reversible for `pi`.
Kernel validate_kernel(Mat matrix, const Distribution& pi);

/// max_y |(pi P)(y) - pi(y)|.
double stationarity_residual(const Mat& p, const Distribution& pi);
/// max_{x,y} |pi(x) P(x,y) - pi(y) P(y,x)|.
double reversibility_residual(const Mat& p, const Distribution& pi);

/// Throws DimensionMismatch / ReferenceMismatch unless both kernels share pi.
void require_same_reference(const Kernel& a, const Kernel& b);
void require_reversible(const Kernel& p);
void require_stationary(const Kernel& p);

}  // namespace orbitmc
