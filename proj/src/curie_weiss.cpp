#include "orbitmc/curie_weiss.hpp"

#include "orbitmc/parallel/dense.hpp"
#include "orbitmc/spectral.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <string>

namespace orbitmc {

void require_valid(const CwModel& model) {
  if (model.d == 0 || model.d % 2 != 0) {
    throw Error(ErrorCode::InvalidArgument, "d must be a positive even integer, got " + std::to_string(model.d));
  }
  if (!(model.beta >= 0.0) || !std::isfinite(model.beta)) {
    throw Error(ErrorCode::InvalidArgument, "beta must be finite and non-negative");
  }
}

namespace {

void require_dense(const CwModel& model) {
  require_valid(model);
  if (model.d > kCwMaxDenseSpins) {
    throw Error(ErrorCode::TooLarge, "d = " + std::to_string(model.d) + " exceeds the dense limit " +
                                         std::to_string(kCwMaxDenseSpins));
  }
}

double log_weight(const CwModel& model, int s) {
  return model.beta * static_cast<double>(s) * static_cast<double>(s) / (2.0 * static_cast<double>(model.d));
}

}  // namespace

int cw_spin_sum(std::uint64_t state, unsigned d) {
  return 2 * std::popcount(state) - static_cast<int>(d);
}

unsigned cw_orbit_index(std::uint64_t state, unsigned d) {
  return static_cast<unsigned>(std::abs(cw_spin_sum(state, d)) / 2);
}

Distribution cw_distribution(const CwModel& model) {
  require_dense(model);
  const std::size_t n = std::size_t{1} << model.d;
  std::vector<double> logw(n);
  for (std::size_t x = 0; x < n; ++x) logw[x] = log_weight(model, cw_spin_sum(x, model.d));
  return Distribution::from_log_weights(logw);
}

OrbitPartition cw_orbit_partition(unsigned d) {
  require_dense(CwModel{d, 0.0});
  const std::size_t n = std::size_t{1} << d;
  std::vector<std::vector<std::size_t>> orbits(d / 2 + 1);
  for (std::size_t x = 0; x < n; ++x) orbits[cw_orbit_index(x, d)].push_back(x);
  return OrbitPartition(n, std::move(orbits));
}

std::vector<double> cw_orbit_log_weights(const CwModel& model) {
  require_valid(model);
  const unsigned half = model.d / 2;
  const double dd = static_cast<double>(model.d);
  std::vector<double> lw(half + 1);
  for (unsigned i = 0; i <= half; ++i) {
    const double k = static_cast<double>(half - i);
    const double log_binom = std::lgamma(dd + 1.0) - std::lgamma(k + 1.0) - std::lgamma(dd - k + 1.0);
    // The |m| = 0 orbit has no +/- mirror image.
    const double mult = i == 0 ? 0.0 : std::log(2.0);
    lw[i] = log_binom + mult + 2.0 * static_cast<double>(i) * static_cast<double>(i) * model.beta / dd;
  }
  return lw;
}

std::vector<double> cw_orbit_masses(const CwModel& model) {
  // Normalized in log space. At large d beta the light orbits underflow to
  // zero, which a Distribution would reject.
  std::vector<double> w = cw_orbit_log_weights(model);
  const double top = *std::max_element(w.begin(), w.end());
  for (double& v : w) v = std::exp(v - top);
  const double z = stable_sum(w);
  for (double& v : w) v /= z;
  return w;
}

double beta_star(unsigned d) { return std::max((static_cast<double>(d) + 1.0) / 4.0, 1.0); }

OrbitPartition merged_tail_partition(unsigned d, unsigned kcut) {
  require_dense(CwModel{d, 0.0});
  if (kcut < 1 || kcut > d / 2) {
    throw Error(ErrorCode::InvalidArgument, "kcut = " + std::to_string(kcut) + " outside 1.." + std::to_string(d / 2));
  }
  const std::size_t n = std::size_t{1} << d;
  std::vector<std::vector<std::size_t>> blocks(kcut + 1);
  for (std::size_t x = 0; x < n; ++x) blocks[std::min(cw_orbit_index(x, d), kcut)].push_back(x);
  return OrbitPartition(n, std::move(blocks));
}

double cw_tail_mass(const CwModel& model, unsigned kcut) {
  const auto masses = cw_orbit_masses(model);
  if (kcut < 1 || kcut >= masses.size()) {
    throw Error(ErrorCode::InvalidArgument, "kcut = " + std::to_string(kcut) + " outside 1.." +
                                                std::to_string(masses.size() - 1));
  }
  return stable_sum(std::span<const double>(masses).subspan(kcut));
}

unsigned choose_kcut(const CwModel& model, double min_delta) {
  require_valid(model);
  for (unsigned k = 1; k <= model.d / 2; ++k) {
    if (cw_tail_mass(model, k) - 0.5 > min_delta) return k;
  }
  throw Error(ErrorCode::MassNotDominant, "no kcut gives a tail mass above " + std::to_string(0.5 + min_delta));
}

Kernel cw_star_kernel(const CwModel& model, unsigned kcut) {
  require_dense(model);
  const Distribution pi = cw_distribution(model);
  const double tail = cw_tail_mass(model, kcut);
  if (!(tail > 0.5)) {
    throw Error(ErrorCode::MassNotDominant, "tail mass " + std::to_string(tail) + " is not above 1/2");
  }
  const std::size_t n = pi.size();
  std::vector<char> in_tail(n);
  for (std::size_t x = 0; x < n; ++x) in_tail[x] = cw_orbit_index(x, model.d) >= kcut;
  const double cross = 1.0 / tail;
  const double inner = (2.0 * tail - 1.0) / (tail * tail);
  Mat q = Mat::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
#pragma omp parallel for schedule(static) if (n >= 64)
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) {
      double v = 0.0;
      if (in_tail[x] && in_tail[y]) {
        v = pi[y] * inner;
      } else if (in_tail[x] != in_tail[y]) {
        v = pi[y] * cross;
      }
      q(static_cast<Eigen::Index>(x), static_cast<Eigen::Index>(y)) = v;
    }
  }
  return validate_kernel(std::move(q), pi);
}

CwStarSampler::CwStarSampler(const CwModel& model, unsigned kcut)
    : d_(model.d), kcut_(kcut), masses_(cw_orbit_masses(model)), tail_mass_(cw_tail_mass(model, kcut)) {
  if (d_ > 63) throw Error(ErrorCode::TooLarge, "streaming sampler supports d <= 63");
  if (!(tail_mass_ > 0.5)) {
    throw Error(ErrorCode::MassNotDominant, "tail mass " + std::to_string(tail_mass_) + " is not above 1/2");
  }
}

unsigned CwStarSampler::draw_orbit(bool into_tail, Rng& rng) const {
  const std::span<const double> all(masses_);
  if (into_tail) return kcut_ + static_cast<unsigned>(rng.categorical(all.subspan(kcut_)));
  return static_cast<unsigned>(rng.categorical(all.subspan(0, kcut_)));
}

void CwStarSampler::fill_uniform(unsigned orbit, std::vector<int>& spins, Rng& rng) const {
  // Partial Fisher-Yates: the first d/2 + i slots of a shuffled index array
  // get the +1 spins.
  std::vector<unsigned> pos(d_);
  std::iota(pos.begin(), pos.end(), 0U);
  const unsigned plus = d_ / 2 + orbit;
  for (unsigned t = 0; t < plus; ++t) {
    const auto j = t + static_cast<unsigned>(rng.below(d_ - t));
    std::swap(pos[t], pos[j]);
  }
  spins.assign(d_, -1);
  for (unsigned t = 0; t < plus; ++t) spins[pos[t]] = 1;
  if (orbit >= 1 && rng.bernoulli(0.5)) {
    for (int& s : spins) s = -s;
  }
}

void CwStarSampler::step(std::vector<int>& spins, Rng& rng) const {
  if (spins.size() != d_) throw Error(ErrorCode::DimensionMismatch, "spin vector has wrong length");
  int s = 0;
  for (int v : spins) s += v;
  const bool in_tail = static_cast<unsigned>(std::abs(s) / 2) >= kcut_;
  bool to_tail = true;
  if (in_tail) to_tail = rng.bernoulli(2.0 - 1.0 / tail_mass_);
  fill_uniform(draw_orbit(to_tail, rng), spins, rng);
}

std::uint64_t CwStarSampler::step(std::uint64_t state, Rng& rng) const {
  std::vector<int> spins(d_);
  for (unsigned j = 0; j < d_; ++j) spins[j] = (state >> j) & 1U ? 1 : -1;
  step(spins, rng);
  std::uint64_t out = 0;
  for (unsigned j = 0; j < d_; ++j) {
    if (spins[j] > 0) out |= std::uint64_t{1} << j;
  }
  return out;
}

Kernel glauber_kernel(const CwModel& model) {
  require_dense(model);
  const Distribution pi = cw_distribution(model);
  const std::size_t n = pi.size();
  const double inv_d = 1.0 / static_cast<double>(model.d);
  Mat p = Mat::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (std::size_t x = 0; x < n; ++x) {
    double off = 0.0;
    for (unsigned j = 0; j < model.d; ++j) {
      const std::size_t y = x ^ (std::size_t{1} << j);
      const double v = inv_d * std::min(1.0, pi[y] / pi[x]);
      p(static_cast<Eigen::Index>(x), static_cast<Eigen::Index>(y)) = v;
      off += v;
    }
    p(static_cast<Eigen::Index>(x), static_cast<Eigen::Index>(x)) = std::max(0.0, 1.0 - off);
  }
  return validate_kernel(std::move(p), pi);
}

unsigned long long mixing_time_exact(const Kernel& p, double eps) {
  if (!(eps > 0.0)) throw Error(ErrorCode::InvalidArgument, "eps must be positive");
  constexpr unsigned long long kCap = 1000000ULL;
  const Distribution& pi = p.pi();
  if (parallel::max_tv_distance(p.matrix(), pi) < eps) return 1;
  // powers[j] = P^{2^j}; stop at the first power that is already mixed.
  std::vector<Mat> powers{p.matrix()};
  while (parallel::max_tv_distance(powers.back(), pi) >= eps) {
    if ((1ULL << (powers.size() - 1)) > kCap) {
      throw Error(ErrorCode::NoConvergence, "not mixed after " + std::to_string(kCap) + " steps");
    }
    powers.push_back(parallel::multiply(powers.back(), powers.back()));
  }
  // Largest t with TV(P^t) >= eps, built from the top bit down.
  Mat cur = powers.front();
  unsigned long long t = 1;
  for (std::size_t j = powers.size() - 1; j-- > 0;) {
    Mat cand = parallel::multiply(cur, powers[j]);
    if (parallel::max_tv_distance(cand, pi) >= eps) {
      cur = std::move(cand);
      t += 1ULL << j;
    }
  }
  if (t + 1 > kCap) throw Error(ErrorCode::NoConvergence, "not mixed after " + std::to_string(kCap) + " steps");
  return t + 1;
}

double star_mixing_upper_bound(const CwModel& model, double delta, double eps) {
  if (!(delta > 0.0)) throw Error(ErrorCode::MassNotDominant, "delta must be positive");
  const double d = static_cast<double>(model.d);
  return (d * model.beta / 2.0 + d * std::log(2.0) - std::log(eps)) / (2.0 * delta);
}

double glauber_mixing_lower_bound(const CwModel& model, double eps) {
  const double d = static_cast<double>(model.d);
  return (std::exp(model.beta * d - d * std::log(4.0)) - 1.0) * std::log(1.0 / (2.0 * eps));
}

double relaxation_mixing_lower_bound(const Kernel& p, double eps) {
  const SpectralSummary s = spectrum_reversible(p);
  return (1.0 / (1.0 - s.lambda2) - 1.0) * std::log(1.0 / (2.0 * eps));
}

}  // namespace orbitmc
