#include "orbitmc/spectral.hpp"

#include "orbitmc/orbit_kernels.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/LU>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>

namespace orbitmc {

namespace {

Vec sqrt_pi(const Distribution& pi) { return pi.as_vector().cwiseSqrt(); }

SpectralSummary summarize(std::vector<double> eig) {
  std::sort(eig.begin(), eig.end(), std::greater<>());
  SpectralSummary s;
  s.eigenvalues = std::move(eig);
  if (s.eigenvalues.size() >= 2) {
    s.lambda2 = s.eigenvalues[1];
    s.slem = std::max(std::abs(s.eigenvalues[1]), std::abs(s.eigenvalues.back()));
  }
  s.right_gap = 1.0 - s.lambda2;
  s.abs_gap = 1.0 - s.slem;
  return s;
}

}  // namespace

Mat symmetrize(const Mat& a, const Distribution& pi) {
  const Vec r = sqrt_pi(pi);
  Mat s = r.asDiagonal() * a * r.cwiseInverse().asDiagonal();
  return 0.5 * (s + s.transpose());
}

SpectralSummary spectrum_reversible(const Mat& p, const Distribution& pi) {
  const Mat s = symmetrize(p, pi);
  Eigen::SelfAdjointEigenSolver<Mat> solver(s, Eigen::EigenvaluesOnly);
  const Vec ev = solver.eigenvalues();
  return summarize(std::vector<double>(ev.data(), ev.data() + ev.size()));
}

SpectralSummary spectrum_reversible(const Kernel& p) {
  require_reversible(p);
  return spectrum_reversible(p.matrix(), p.pi());
}

double pi_operator_norm(const Mat& a, const Distribution& pi) {
  const Vec r = sqrt_pi(pi);
  const Mat s = r.asDiagonal() * a * r.cwiseInverse().asDiagonal();
  Eigen::JacobiSVD<Mat> svd(s);
  return svd.singularValues().size() > 0 ? svd.singularValues()(0) : 0.0;
}

std::vector<double> mh_independence_spectrum(const std::vector<double>& masses) {
  if (masses.empty()) throw Error(ErrorCode::InvalidArgument, "no masses");
  for (std::size_t i = 0; i < masses.size(); ++i) {
    if (!(masses[i] > 0.0)) throw Error(ErrorCode::InvalidArgument, "masses must be positive");
    if (i > 0 && masses[i] > masses[i - 1]) {
      throw Error(ErrorCode::NotSorted, "masses must be non-increasing");
    }
  }
  const double total = stable_sum(masses);
  const std::size_t m = masses.size();
  const double md = static_cast<double>(m);
  // Tail sums of the normalized masses, accumulated from the small end.
  std::vector<double> tail(m + 1, 0.0);
  for (std::size_t l = m; l-- > 0;) tail[l] = tail[l + 1] + masses[l] / total;
  std::vector<double> eig{1.0};
  for (std::size_t j = 2; j <= m; ++j) {
    const double pj = masses[j - 2] / total;
    eig.push_back(1.0 - static_cast<double>(j - 2) / md - tail[j - 2] / (md * pj));
  }
  return eig;
}

ThetaConstant theta_mh(const OrbitPartition& part, const Distribution& pi) {
  require_same_size(part, pi);
  ThetaConstant best;
  bool any = false;
  for (std::size_t i = 0; i < part.num_orbits(); ++i) {
    const auto& orbit = part.orbit(i);
    if (orbit.size() < 2) continue;
    std::vector<double> w;
    w.reserve(orbit.size());
    for (std::size_t x : orbit) w.push_back(pi[x]);
    std::sort(w.begin(), w.end(), std::greater<>());
    const double m1 = static_cast<double>(orbit.size() - 1);
    const double mass = stable_sum(w);
    const double top = std::abs(1.0 - mass / (m1 * w.front()));
    const double bottom = w[w.size() - 1] / (w[w.size() - 2] * m1);
    if (!any || top > best.theta) best = {top, i, ThetaBranch::Top};
    any = true;
    if (bottom > best.theta) best = {bottom, i, ThetaBranch::Bottom};
  }
  if (!any) throw Error(ErrorCode::AllSingletons, "every orbit is a singleton; M = I");
  return best;
}

double slem_on_orbit_complement(const Kernel& k, const OrbitPartition& part) {
  require_reversible(k);
  require_same_size(part, k.pi());
  const auto n = static_cast<Eigen::Index>(k.size());
  const Vec r = sqrt_pi(k.pi());
  // Orbit indicators become orthonormal vectors after the sqrt(pi) scaling.
  Mat proj = Mat::Identity(n, n);
  for (const auto& orbit : part.orbits()) {
    Vec v = Vec::Zero(n);
    for (std::size_t x : orbit) v(static_cast<Eigen::Index>(x)) = r(static_cast<Eigen::Index>(x));
    v.normalize();
    proj -= v * v.transpose();
  }
  const Mat s = proj * symmetrize(k.matrix(), k.pi()) * proj;
  Eigen::SelfAdjointEigenSolver<Mat> solver(0.5 * (s + s.transpose()), Eigen::EigenvaluesOnly);
  return solver.eigenvalues().cwiseAbs().maxCoeff();
}

double slem_power_bound(double rho_p, double theta, unsigned k) {
  const double tk = std::pow(theta, static_cast<double>(k));
  return rho_p * (2.0 * tk + tk * tk);
}

long long approximation_time(double eps, double theta, double rho_p) {
  if (!(theta > 0.0 && theta < 1.0)) {
    throw Error(ErrorCode::ThetaDegenerate, "theta = " + std::to_string(theta));
  }
  if (!(eps > 0.0)) throw Error(ErrorCode::InvalidArgument, "eps must be positive");
  if (!(rho_p > 0.0)) return 0;
  const double denom = std::log(1.0 / theta);
  const double a = std::log(4.0 * rho_p / eps) / denom;
  const double b = std::log(2.0 * rho_p / eps) / (2.0 * denom);
  const double t = std::ceil(std::max(a, b));
  return t > 0.0 ? static_cast<long long>(t) : 0;
}

double pi_inner(const Vec& f, const Vec& g, const Distribution& pi) {
  double s = 0.0;
  for (Eigen::Index x = 0; x < f.size(); ++x) s += pi[static_cast<std::size_t>(x)] * f(x) * g(x);
  return s;
}

Vec center(const Vec& f, const Distribution& pi) {
  const double mean = pi.as_vector().dot(f);
  return f.array() - mean;
}

namespace {

void require_centered(const Vec& f, const Kernel& p) {
  if (static_cast<std::size_t>(f.size()) != p.size()) {
    throw Error(ErrorCode::DimensionMismatch, "function length differs from state count");
  }
  const double mean = p.pi().as_vector().dot(f);
  if (std::abs(mean) > tolerances().probability) {
    throw Error(ErrorCode::NotCentered, "pi-mean of f is " + std::to_string(mean));
  }
}

}  // namespace

double asymptotic_variance(const Vec& f, const Kernel& p) {
  require_centered(f, p);
  const auto n = static_cast<Eigen::Index>(p.size());
  const Vec pv = p.pi().as_vector();
  Mat a = Mat::Identity(n, n) - p.matrix();
  for (Eigen::Index x = 0; x < n; ++x) a.row(x) += pv.transpose();
  Eigen::FullPivLU<Mat> lu(a);
  lu.setThreshold(1e-10);
  if (lu.rank() < n) {
    throw Error(ErrorCode::SingularFundamentalMatrix, "I - P + Pi is singular (P not ergodic)");
  }
  const Vec zf = lu.solve(f);
  return 2.0 * pi_inner(f, zf, p.pi()) - pi_inner(f, f, p.pi());
}

double asymptotic_variance_variational(const Vec& f, const Kernel& p) {
  require_reversible(p);
  require_centered(f, p);
  const auto n = static_cast<Eigen::Index>(p.size());
  const Vec r = sqrt_pi(p.pi());
  // In sqrt(pi) coordinates I - P is symmetric PSD with kernel spanned by r;
  // adding r r^T makes it definite without moving the centered solution.
  const Mat lap = Mat::Identity(n, n) - symmetrize(p.matrix(), p.pi());
  const Mat a = lap + r * r.transpose();
  Eigen::LDLT<Mat> ldlt(a);
  if (ldlt.info() != Eigen::Success || ldlt.vectorD().cwiseAbs().minCoeff() < 1e-12) {
    throw Error(ErrorCode::SingularFundamentalMatrix, "I - P is singular on centered functions");
  }
  const Vec g = ldlt.solve(r.cwiseProduct(f));
  const Vec h = g.cwiseQuotient(r);
  const Vec ih = h - p.matrix() * h;
  return 4.0 * pi_inner(f, h, p.pi()) - 2.0 * pi_inner(ih, h, p.pi()) - pi_inner(f, f, p.pi());
}

double worst_case_variance(const Kernel& p) {
  const SpectralSummary s = spectrum_reversible(p);
  if (s.lambda2 >= 1.0 - tolerances().algebraic) {
    throw Error(ErrorCode::DegenerateGap, "lambda_2 = " + std::to_string(s.lambda2));
  }
  return (1.0 + s.lambda2) / (1.0 - s.lambda2);
}

}  // namespace orbitmc
