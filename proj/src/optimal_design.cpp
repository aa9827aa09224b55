#include "orbitmc/optimal_design.hpp"

#include "orbitmc/orbit_kernels.hpp"
#include "orbitmc/parallel/dense.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace orbitmc {

Kernel lift_orbit_sampler(const OrbitSampler& ps, const OrbitPartition& part, const Distribution& pi) {
  require_same_size(part, pi);
  if (ps.size() != part.num_orbits()) {
    throw Error(ErrorCode::DimensionMismatch, "orbit sampler has " + std::to_string(ps.size()) +
                                                  " states but partition has " +
                                                  std::to_string(part.num_orbits()) + " orbits");
  }
  const Distribution masses = part.orbit_masses(pi);
  if (!masses.approx_equal(ps.pi(), tolerances().probability)) {
    throw Error(ErrorCode::ReferenceMismatch, "orbit sampler reference differs from orbit masses");
  }
  const auto n = static_cast<Eigen::Index>(pi.size());
  const auto& labels = part.labels();
  Mat q(n, n);
  for (std::size_t x = 0; x < pi.size(); ++x) {
    for (std::size_t y = 0; y < pi.size(); ++y) {
      q(static_cast<Eigen::Index>(x), static_cast<Eigen::Index>(y)) =
          ps(labels[x], labels[y]) * pi[y] / masses[labels[y]];
    }
  }
  return validate_kernel(std::move(q), pi);
}

Vec orbit_isometry(const Vec& f, const OrbitPartition& part) {
  if (static_cast<std::size_t>(f.size()) != part.num_orbits()) {
    throw Error(ErrorCode::DimensionMismatch, "orbit function has wrong length");
  }
  Vec out(static_cast<Eigen::Index>(part.num_states()));
  for (std::size_t x = 0; x < part.num_states(); ++x) {
    out(static_cast<Eigen::Index>(x)) = f(static_cast<Eigen::Index>(part.orbit_of(x)));
  }
  return out;
}

Vec orbit_isometry_adjoint(const Vec& g, const OrbitPartition& part, const Distribution& pi) {
  require_same_size(part, pi);
  if (static_cast<std::size_t>(g.size()) != part.num_states()) {
    throw Error(ErrorCode::DimensionMismatch, "state function has wrong length");
  }
  Vec out(static_cast<Eigen::Index>(part.num_orbits()));
  for (std::size_t i = 0; i < part.num_orbits(); ++i) {
    double mass = 0.0;
    double acc = 0.0;
    for (std::size_t x : part.orbit(i)) {
      mass += pi[x];
      acc += pi[x] * g(static_cast<Eigen::Index>(x));
    }
    out(static_cast<Eigen::Index>(i)) = acc / mass;
  }
  return out;
}

OrbitSampler star_orbit_sampler(const Distribution& pibar) {
  const std::size_t k = pibar.size();
  for (std::size_t i = 1; i < k; ++i) {
    if (pibar[i] < pibar[i - 1]) throw Error(ErrorCode::NotSorted, "orbit masses must be non-decreasing");
  }
  const double top = pibar[k - 1];
  if (!(top > 0.5)) {
    throw Error(ErrorCode::MassNotDominant, "largest orbit mass " + std::to_string(top) + " is not above 1/2");
  }
  const auto kk = static_cast<Eigen::Index>(k);
  Mat m = Mat::Zero(kk, kk);
  for (Eigen::Index i = 0; i + 1 < kk; ++i) {
    m(i, kk - 1) = 1.0;
    m(kk - 1, i) = pibar[static_cast<std::size_t>(i)] / top;
  }
  m(kk - 1, kk - 1) = 2.0 - 1.0 / top;
  return validate_kernel(std::move(m), pibar);
}

OrbitPartition optimal_partition_for_k(const Distribution& pi, std::size_t k) {
  const std::size_t n = pi.size();
  if (k < 1 || k > n) {
    throw Error(ErrorCode::InvalidArgument, "k = " + std::to_string(k) + " outside 1.." + std::to_string(n));
  }
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return pi[a] < pi[b]; });
  std::vector<std::vector<std::size_t>> orbits;
  for (std::size_t i = 0; i + 1 < k; ++i) orbits.push_back({order[i]});
  orbits.emplace_back(order.begin() + static_cast<std::ptrdiff_t>(k - 1), order.end());
  return OrbitPartition(n, std::move(orbits));
}

std::size_t require_tail_shape(const OrbitPartition& part) {
  std::size_t tail = part.num_orbits() - 1;
  std::size_t big = 0;
  for (std::size_t i = 0; i < part.num_orbits(); ++i) {
    if (part.orbit(i).size() > 1) {
      tail = i;
      ++big;
    }
  }
  if (big > 1) {
    throw Error(ErrorCode::WrongPartitionShape, "expected singletons plus one tail orbit, found " +
                                                    std::to_string(big) + " non-singleton orbits");
  }
  return tail;
}

ExactSamplerVerdict exact_sampler_check(const Kernel& p, const OrbitPartition& part) {
  require_same_size(part, p.pi());
  const std::size_t tail = require_tail_shape(part);
  const Distribution& pi = p.pi();
  const auto& tail_states = part.orbit(tail);
  std::vector<std::size_t> singles;
  for (std::size_t i = 0; i < part.num_orbits(); ++i) {
    if (i != tail) singles.push_back(part.orbit(i).front());
  }
  double tail_mass = 0.0;
  for (std::size_t z : tail_states) tail_mass += pi[z];

  ExactSamplerVerdict v;
  for (std::size_t x : singles) {
    for (std::size_t y : singles) v.residuals[0] = std::max(v.residuals[0], std::abs(p(x, y) - pi[y]));
    double row = 0.0;
    for (std::size_t w : tail_states) row += p(x, w);
    v.residuals[1] = std::max(v.residuals[1], std::abs(row - tail_mass));
  }
  for (std::size_t y : singles) {
    double col = 0.0;
    for (std::size_t z : tail_states) col += pi[z] * p(z, y);
    v.residuals[2] = std::max(v.residuals[2], std::abs(col - tail_mass * pi[y]));
  }
  double block = 0.0;
  for (std::size_t z : tail_states) {
    for (std::size_t w : tail_states) block += pi[z] * p(z, w);
  }
  v.residuals[3] = std::abs(block - tail_mass * tail_mass);

  const Mat gpg = parallel::gibbs_sandwich(p.matrix(), part, pi);
  const Kernel big_pi = stationary_kernel(pi);
  v.gpg_distance = (gpg - big_pi.matrix()).cwiseAbs().maxCoeff();
  const double tol = tolerances().probability;
  v.exact = std::all_of(v.residuals.begin(), v.residuals.end(), [tol](double r) { return r <= tol; });
  return v;
}

Kernel construct_exact_sampler(const OrbitPartition& part, const Distribution& pi, const Mat& free_block) {
  require_same_size(part, pi);
  const std::size_t tail = require_tail_shape(part);
  const auto& tail_states = part.orbit(tail);
  std::vector<std::size_t> singles;
  for (std::size_t i = 0; i < part.num_orbits(); ++i) {
    if (i != tail) singles.push_back(part.orbit(i).front());
  }
  if (free_block.rows() != static_cast<Eigen::Index>(singles.size()) ||
      free_block.cols() != static_cast<Eigen::Index>(tail_states.size())) {
    throw Error(ErrorCode::DimensionMismatch, "free block must be (singletons) x (tail states)");
  }
  double tail_mass = 0.0;
  for (std::size_t z : tail_states) tail_mass += pi[z];
  for (Eigen::Index r = 0; r < free_block.rows(); ++r) {
    if ((free_block.row(r).array() < 0.0).any()) {
      throw Error(ErrorCode::InvalidArgument, "free block entries must be non-negative");
    }
    if (std::abs(free_block.row(r).sum() - tail_mass) > tolerances().algebraic) {
      throw Error(ErrorCode::InvalidArgument, "free row " + std::to_string(r + 1) + " does not sum to the tail mass");
    }
  }
  const auto n = static_cast<Eigen::Index>(pi.size());
  Mat p = Mat::Zero(n, n);
  for (std::size_t x = 0; x < pi.size(); ++x) {
    for (std::size_t y : singles) p(static_cast<Eigen::Index>(x), static_cast<Eigen::Index>(y)) = pi[y];
  }
  for (std::size_t r = 0; r < singles.size(); ++r) {
    for (std::size_t c = 0; c < tail_states.size(); ++c) {
      p(static_cast<Eigen::Index>(singles[r]), static_cast<Eigen::Index>(tail_states[c])) =
          free_block(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
    }
  }
  for (std::size_t c = 0; c < tail_states.size(); ++c) {
    const std::size_t y = tail_states[c];
    double inflow = 0.0;
    for (std::size_t r = 0; r < singles.size(); ++r) {
      inflow += pi[singles[r]] * free_block(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
    }
    const double v = (pi[y] - inflow) / tail_mass;
    if (v < -tolerances().clamp) {
      throw Error(ErrorCode::NegativeInducedEntry, "tail column " + std::to_string(y + 1) +
                                                       " would get " + std::to_string(v));
    }
    for (std::size_t x : tail_states) {
      p(static_cast<Eigen::Index>(x), static_cast<Eigen::Index>(y)) = std::max(0.0, v);
    }
  }
  return validate_kernel(std::move(p), pi);
}

}  // namespace orbitmc
