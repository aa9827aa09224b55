#include "orbitmc/kernel.hpp"

#include <cmath>
#include <string>

namespace orbitmc {

double stationarity_residual(const Mat& p, const Distribution& pi) {
  const Vec row = pi.as_vector().transpose() * p;
  double worst = 0.0;
  for (Eigen::Index y = 0; y < row.size(); ++y) {
    worst = std::max(worst, std::abs(row(y) - pi[static_cast<std::size_t>(y)]));
  }
  return worst;
}

double reversibility_residual(const Mat& p, const Distribution& pi) {
  double worst = 0.0;
  for (Eigen::Index x = 0; x < p.rows(); ++x) {
    for (Eigen::Index y = x + 1; y < p.cols(); ++y) {
      const double flow_xy = pi[static_cast<std::size_t>(x)] * p(x, y);
      const double flow_yx = pi[static_cast<std::size_t>(y)] * p(y, x);
      worst = std::max(worst, std::abs(flow_xy - flow_yx));
    }
  }
  return worst;
}

Kernel validate_kernel(Mat matrix, const Distribution& pi) {
  if (matrix.rows() != matrix.cols()) {
    throw Error(ErrorCode::DimensionMismatch, "kernel matrix is not square");
  }
  if (static_cast<std::size_t>(matrix.rows()) != pi.size()) {
    throw Error(ErrorCode::DimensionMismatch, "kernel has " + std::to_string(matrix.rows()) +
                                                  " states but distribution has " +
                                                  std::to_string(pi.size()));
  }
  const Tolerances& tol = tolerances();
  for (Eigen::Index x = 0; x < matrix.rows(); ++x) {
    double sum = 0.0;
    for (Eigen::Index y = 0; y < matrix.cols(); ++y) {
      const double v = matrix(x, y);
      if (!std::isfinite(v) || v < -tol.algebraic || v > 1.0 + tol.algebraic) {
        throw Error(ErrorCode::NonStochastic, "entry (" + std::to_string(x) + "," +
                                                  std::to_string(y) + ") = " + std::to_string(v));
      }
      sum += v;
    }
    if (std::abs(sum - 1.0) > tol.probability) {
      throw Error(ErrorCode::NonStochastic,
                  "row " + std::to_string(x) + " sums to " + std::to_string(sum));
    }
  }
  Kernel k(std::move(matrix), pi);
  k.row_stochastic_ = Flag::Yes;
  k.stationary_ = stationarity_residual(k.matrix_, pi) <= tol.probability ? Flag::Yes : Flag::No;
  k.reversible_ = reversibility_residual(k.matrix_, pi) <= tol.probability ? Flag::Yes : Flag::No;
  return k;
}

void require_same_reference(const Kernel& a, const Kernel& b) {
  if (a.size() != b.size()) {
    throw Error(ErrorCode::DimensionMismatch, "kernels act on different state counts");
  }
  if (!a.pi().approx_equal(b.pi(), tolerances().algebraic)) {
    throw Error(ErrorCode::ReferenceMismatch, "kernels have different reference distributions");
  }
}

void require_reversible(const Kernel& p) {
  if (!p.is_reversible()) throw Error(ErrorCode::NotReversible, "kernel is not pi-reversible");
}

void require_stationary(const Kernel& p) {
  if (!p.is_stationary()) throw Error(ErrorCode::NotStationary, "kernel is not pi-stationary");
}

}  // namespace orbitmc
