#include "orbitmc/orbit_decomposition.hpp"

#include "orbitmc/orbit_kernels.hpp"
#include "orbitmc/parallel/dense.hpp"
#include "orbitmc/spectral.hpp"

#include <algorithm>
#include <string>

namespace orbitmc {

Kernel projection_chain(const Kernel& p, const OrbitPartition& part) {
  require_same_size(part, p.pi());
  require_stationary(p);
  const Distribution masses = part.orbit_masses(p.pi());
  Mat w = parallel::orbit_flow(p.matrix(), part, p.pi());
  for (Eigen::Index i = 0; i < w.rows(); ++i) w.row(i) /= masses[static_cast<std::size_t>(i)];
  return validate_kernel(std::move(w), masses);
}

RestrictionChain restriction_chain(const Kernel& p, const OrbitPartition& part, std::size_t i) {
  require_same_size(part, p.pi());
  if (i >= part.num_orbits()) {
    throw Error(ErrorCode::InvalidArgument, "orbit index " + std::to_string(i) + " out of range");
  }
  const auto& orbit = part.orbit(i);
  const auto m = static_cast<Eigen::Index>(orbit.size());
  Mat r = Mat::Zero(m, m);
  std::vector<double> w;
  w.reserve(orbit.size());
  for (Eigen::Index a = 0; a < m; ++a) {
    const auto x = static_cast<Eigen::Index>(orbit[static_cast<std::size_t>(a)]);
    double off = 0.0;
    for (Eigen::Index b = 0; b < m; ++b) {
      if (a == b) continue;
      const double v = p.matrix()(x, static_cast<Eigen::Index>(orbit[static_cast<std::size_t>(b)]));
      r(a, b) = v;
      off += v;
    }
    r(a, a) = std::max(0.0, 1.0 - off);
    w.push_back(p.pi()[orbit[static_cast<std::size_t>(a)]]);
  }
  return {i, validate_kernel(std::move(r), Distribution::from_weights(w))};
}

double gamma(const Kernel& p, const OrbitPartition& part) {
  require_same_size(part, p.pi());
  const auto& labels = part.labels();
  double worst = 0.0;
  for (std::size_t x = 0; x < p.size(); ++x) {
    double escape = 0.0;
    for (std::size_t y = 0; y < p.size(); ++y) {
      if (labels[y] != labels[x]) escape += p(x, y);
    }
    worst = std::max(worst, escape);
  }
  return worst;
}

JerrumBound jerrum_gap_bound(const Kernel& p, const OrbitPartition& part) {
  require_reversible(p);
  JerrumBound out{};
  out.projection_gap = spectrum_reversible(projection_chain(p, part)).right_gap;
  out.min_restriction_gap = 1.0;
  for (std::size_t i = 0; i < part.num_orbits(); ++i) {
    const double g = spectrum_reversible(restriction_chain(p, part, i).chain).right_gap;
    out.min_restriction_gap = std::min(out.min_restriction_gap, g);
  }
  out.gamma = gamma(p, part);
  const double gbar = out.projection_gap;
  const double denom = 3.0 * out.gamma + gbar;
  const double second = denom > 0.0 ? gbar * out.min_restriction_gap / denom : 0.0;
  out.bound = std::min(gbar / 3.0, second);
  return out;
}

std::pair<double, double> gpg_restriction_spectrum(const Kernel& p, const OrbitPartition& part,
                                                   std::size_t i) {
  require_same_size(part, p.pi());
  require_stationary(p);
  if (i >= part.num_orbits()) {
    throw Error(ErrorCode::InvalidArgument, "orbit index " + std::to_string(i) + " out of range");
  }
  const auto& orbit = part.orbit(i);
  double mass = 0.0;
  for (std::size_t x : orbit) mass += p.pi()[x];
  double abar = 0.0;
  for (std::size_t x : orbit) {
    double stay = 0.0;
    for (std::size_t y : orbit) stay += p(x, y);
    abar += p.pi()[x] / mass * stay;
  }
  return {1.0, 1.0 - abar};
}

}  // namespace orbitmc
