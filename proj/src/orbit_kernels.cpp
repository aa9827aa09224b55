#include "orbitmc/orbit_kernels.hpp"

#include "orbitmc/parallel/dense.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace orbitmc {

const char* to_string(OrbitKernelKind kind) {
  switch (kind) {
    case OrbitKernelKind::Gibbs: return "gibbs";
    case OrbitKernelKind::MetropolisHastings: return "mh";
    case OrbitKernelKind::Barker: return "barker";
  }
  return "unknown";
}

void require_same_size(const OrbitPartition& part, const Distribution& pi) {
  if (part.num_states() != pi.size()) {
    throw Error(ErrorCode::DimensionMismatch, "partition has " + std::to_string(part.num_states()) +
                                                  " states but distribution has " +
                                                  std::to_string(pi.size()));
  }
}

namespace {

double acceptance(OrbitKernelKind kind, double px, double py) {
  if (kind == OrbitKernelKind::MetropolisHastings) return std::min(1.0, py / px);
  return py / (px + py);
}

}  // namespace

Kernel build_orbit_kernel(OrbitKernelKind kind, const OrbitPartition& part, const Distribution& pi) {
  require_same_size(part, pi);
  const auto n = static_cast<Eigen::Index>(pi.size());
  Mat m = Mat::Zero(n, n);
  const double clamp = tolerances().clamp;
  for (const auto& orbit : part.orbits()) {
    if (kind == OrbitKernelKind::Gibbs) {
      double mass = 0.0;
      for (std::size_t y : orbit) mass += pi[y];
      for (std::size_t x : orbit) {
        for (std::size_t y : orbit) {
          m(static_cast<Eigen::Index>(x), static_cast<Eigen::Index>(y)) = pi[y] / mass;
        }
      }
      continue;
    }
    const double inv = orbit.size() > 1 ? 1.0 / static_cast<double>(orbit.size() - 1) : 0.0;
    for (std::size_t x : orbit) {
      double off = 0.0;
      for (std::size_t y : orbit) {
        if (y == x) continue;
        const double v = acceptance(kind, pi[x], pi[y]) * inv;
        m(static_cast<Eigen::Index>(x), static_cast<Eigen::Index>(y)) = v;
        off += v;
      }
      double diag = 1.0 - off;
      if (diag < 0.0) {
        if (diag < -clamp) {
          throw Error(ErrorCode::NonStochastic, "negative diagonal " + std::to_string(diag));
        }
        diag = 0.0;
      }
      m(static_cast<Eigen::Index>(x), static_cast<Eigen::Index>(x)) = diag;
    }
  }
  return validate_kernel(std::move(m), pi);
}

Kernel identity_kernel(const Distribution& pi) {
  const auto n = static_cast<Eigen::Index>(pi.size());
  return validate_kernel(Mat::Identity(n, n), pi);
}

Kernel stationary_kernel(const Distribution& pi) {
  const auto n = static_cast<Eigen::Index>(pi.size());
  Mat m(n, n);
  const Vec v = pi.as_vector();
  for (Eigen::Index x = 0; x < n; ++x) m.row(x) = v.transpose();
  return validate_kernel(std::move(m), pi);
}

Kernel sandwich(const Kernel& q1, const Kernel& p, const Kernel& q2) {
  require_same_reference(q1, p);
  require_same_reference(p, q2);
  return validate_kernel(parallel::sandwich(q1.matrix(), p.matrix(), q2.matrix()), p.pi());
}

Kernel gibbs_sandwich(const Kernel& p, const OrbitPartition& part) {
  require_same_size(part, p.pi());
  return validate_kernel(parallel::gibbs_sandwich(p.matrix(), part, p.pi()), p.pi());
}

double gibbs_sandwich_cross_check(const Kernel& p, const OrbitPartition& part) {
  const Kernel g = build_orbit_kernel(OrbitKernelKind::Gibbs, part, p.pi());
  const Mat product = parallel::sandwich(g.matrix(), p.matrix(), g.matrix());
  const Mat closed = parallel::gibbs_sandwich(p.matrix(), part, p.pi());
  return (product - closed).cwiseAbs().maxCoeff();
}

Kernel additive_mixture(double alpha, const Kernel& p, const Kernel& q) {
  if (!(alpha >= 0.0 && alpha <= 1.0)) {
    throw Error(ErrorCode::AlphaOutOfRange, "alpha = " + std::to_string(alpha));
  }
  require_same_reference(p, q);
  return validate_kernel(alpha * p.matrix() + (1.0 - alpha) * q.matrix(), p.pi());
}

Kernel lazify(const Kernel& p) { return additive_mixture(0.5, identity_kernel(p.pi()), p); }

Kernel kernel_power(const Kernel& p, unsigned long long t) {
  return validate_kernel(parallel::power(p.matrix(), t), p.pi());
}

Kernel compose(const Kernel& a, const Kernel& b) {
  require_same_reference(a, b);
  return validate_kernel(parallel::multiply(a.matrix(), b.matrix()), a.pi());
}

double power_distance_to_gibbs(OrbitKernelKind kind, const OrbitPartition& part,
                               const Distribution& pi, unsigned long long t) {
  if (t == 0) throw Error(ErrorCode::InvalidArgument, "power must be at least 1");
  const Kernel k = build_orbit_kernel(kind, part, pi);
  const Kernel g = build_orbit_kernel(OrbitKernelKind::Gibbs, part, pi);
  return (parallel::power(k.matrix(), t) - g.matrix()).cwiseAbs().maxCoeff();
}

bool has_deterministic_two_cycle(const OrbitPartition& part, const Distribution& pi) {
  require_same_size(part, pi);
  const double tol = tolerances().algebraic;
  for (const auto& orbit : part.orbits()) {
    if (orbit.size() == 2 && std::abs(pi[orbit[0]] - pi[orbit[1]]) <= tol) return true;
  }
  return false;
}

}  // namespace orbitmc
