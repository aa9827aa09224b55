#include "orbitmc/kl_geometry.hpp"

#include "orbitmc/parallel/dense.hpp"

#include <cmath>
#include <string>

namespace orbitmc {

double kl_divergence(const Kernel& p, const Kernel& q) {
  require_same_reference(p, q);
  const double tiny = tolerances().support;
  const auto n = static_cast<Eigen::Index>(p.size());
  double total = 0.0;
  for (Eigen::Index x = 0; x < n; ++x) {
    double row = 0.0;
    for (Eigen::Index y = 0; y < n; ++y) {
      const double a = p.matrix()(x, y);
      if (a <= tiny) continue;
      const double b = q.matrix()(x, y);
      if (b <= tiny) {
        throw Error(ErrorCode::SupportViolation, "P(" + std::to_string(x) + "," + std::to_string(y) +
                                                     ") > 0 but Q vanishes there");
      }
      row += a * std::log(a / b);
    }
    total += p.pi()[static_cast<std::size_t>(x)] * row;
  }
  return total;
}

InvariantSetCertificate invariant_set_membership(const Kernel& q, const OrbitPartition& part) {
  require_same_size(part, q.pi());
  const Distribution masses = part.orbit_masses(q.pi());
  // c_ij = mu_i^T Q_ij 1, mu_i the pi-weights restricted to O_i.
  Mat c = parallel::orbit_flow(q.matrix(), part, q.pi());
  for (Eigen::Index i = 0; i < c.rows(); ++i) c.row(i) /= masses[static_cast<std::size_t>(i)];
  const auto& labels = part.labels();
  double residual = 0.0;
  for (std::size_t x = 0; x < q.size(); ++x) {
    for (std::size_t y = 0; y < q.size(); ++y) {
      const double model = c(static_cast<Eigen::Index>(labels[x]), static_cast<Eigen::Index>(labels[y])) *
                           q.pi()[y] / masses[labels[y]];
      residual = std::max(residual, std::abs(q(x, y) - model));
    }
  }
  return {std::move(c), residual, residual <= tolerances().membership};
}

double sandwich_fixed_residual(const Kernel& q, const OrbitPartition& part, OrbitKernelKind kind) {
  const Kernel k = build_orbit_kernel(kind, part, q.pi());
  return (parallel::sandwich(k.matrix(), q.matrix(), k.matrix()) - q.matrix()).cwiseAbs().maxCoeff();
}

Kernel information_projection(const Kernel& p, const OrbitPartition& part) {
  require_stationary(p);
  return gibbs_sandwich(p, part);
}

namespace {

void require_invariant(const Kernel& q, const OrbitPartition& part) {
  const auto cert = invariant_set_membership(q, part);
  if (!cert.member) {
    throw Error(ErrorCode::QNotInvariant, "Q is not fixed by the Gibbs sandwich (residual " +
                                              std::to_string(cert.residual) + ")");
  }
}

}  // namespace

double pythagorean_residual(const Kernel& p, const Kernel& q, const OrbitPartition& part) {
  require_invariant(q, part);
  const Kernel gpg = information_projection(p, part);
  return kl_divergence(p, q) - kl_divergence(p, gpg) - kl_divergence(gpg, q);
}

double dpi_gap(const Kernel& p, const Kernel& q, Side side, OrbitKernelKind kind,
               const OrbitPartition& part) {
  require_invariant(q, part);
  const Kernel k = build_orbit_kernel(kind, part, p.pi());
  const Kernel moved = side == Side::Right ? compose(p, k) : compose(k, p);
  return kl_divergence(p, q) - kl_divergence(moved, q);
}

}  // namespace orbitmc
