#include "orbitmc/tuning.hpp"

#include "orbitmc/orbit_kernels.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

namespace orbitmc {

void validate(const TuneConfig& cfg) {
  if (cfg.k < 1) throw Error(ErrorCode::InvalidArgument, "k must be at least 1");
  if (cfg.block_len < 1) throw Error(ErrorCode::InvalidArgument, "block length must be at least 1");
}

LearnedAction learn_partition(const std::vector<double>& energy, const std::vector<std::uint64_t>& visits,
                              const std::vector<std::size_t>& first_visit, std::size_t k, Grouping grouping) {
  const std::size_t n = energy.size();
  std::vector<std::size_t> seen;
  for (std::size_t x = 0; x < n; ++x) {
    if (visits[x] > 0) seen.push_back(x);
  }
  auto key_less = [&](std::size_t a, std::size_t b) {
    if (grouping == Grouping::SmallestEnergy) {
      if (energy[a] != energy[b]) return energy[a] < energy[b];
    } else if (visits[a] != visits[b]) {
      return visits[a] > visits[b];
    }
    if (first_visit[a] != first_visit[b]) return first_visit[a] < first_visit[b];
    return a < b;
  };
  std::sort(seen.begin(), seen.end(), key_less);
  std::vector<std::size_t> merged(seen.begin(), seen.begin() + static_cast<std::ptrdiff_t>(std::min(k, seen.size())));
  std::sort(merged.begin(), merged.end());

  std::vector<std::size_t> labels(n);
  std::iota(labels.begin(), labels.end(), std::size_t{0});
  for (std::size_t x : merged) labels[x] = merged.front();
  LearnedAction out{OrbitPartition::from_labels(labels), merged, visits, {}};
  for (std::size_t x : merged) out.merged_energy.push_back(energy[x]);
  return out;
}

namespace {

std::size_t gibbs_refresh(std::size_t x, const OrbitPartition& part, const Distribution& pi, Rng& rng) {
  const auto& orbit = part.orbit(part.orbit_of(x));
  if (orbit.size() == 1) return x;
  std::vector<double> w;
  w.reserve(orbit.size());
  for (std::size_t y : orbit) w.push_back(pi[y]);
  return orbit[rng.categorical(w)];
}

}  // namespace

TuneTrace adaptive_tune(const StepFn& base_step, const Distribution& pi, const std::vector<double>& energy,
                        const TuneConfig& cfg, Rng& rng) {
  validate(cfg);
  const std::size_t n = pi.size();
  if (energy.size() != n) throw Error(ErrorCode::DimensionMismatch, "energy has wrong length");
  if (cfg.initial_state >= n) throw Error(ErrorCode::InvalidArgument, "initial state out of range");

  constexpr std::size_t kUnseen = std::numeric_limits<std::size_t>::max();
  std::vector<std::uint64_t> visits(n, 0);
  std::vector<std::size_t> first_visit(n, kUnseen);
  OrbitPartition part = OrbitPartition::singletons(n);
  TuneTrace trace;
  trace.trajectory.reserve(cfg.total_steps);

  std::size_t x = cfg.initial_state;
  visits[x] = 1;
  first_visit[x] = 0;
  std::size_t step = 0;
  while (step < cfg.total_steps) {
    const std::size_t end = std::min(cfg.total_steps, step + cfg.block_len);
    for (; step < end; ++step) {
      x = gibbs_refresh(x, part, pi, rng);
      x = base_step(x, rng);
      x = gibbs_refresh(x, part, pi, rng);
      if (visits[x]++ == 0) first_visit[x] = step + 1;
      trace.trajectory.push_back(x);
    }
    trace.actions.push_back(learn_partition(energy, visits, first_visit, cfg.k, cfg.grouping));
    part = trace.actions.back().partition;
  }
  return trace;
}

TuneTrace adaptive_tune(const Kernel& p, std::vector<double> energy, const TuneConfig& cfg, Rng& rng) {
  const Distribution& pi = p.pi();
  if (energy.empty()) {
    energy.resize(pi.size());
    for (std::size_t x = 0; x < pi.size(); ++x) energy[x] = -std::log(pi[x]);
  }
  const Mat& m = p.matrix();
  StepFn step = [&m](std::size_t x, Rng& r) {
    const auto row = m.row(static_cast<Eigen::Index>(x));
    return r.categorical(std::span<const double>(row.data(), static_cast<std::size_t>(row.size())));
  };
  return adaptive_tune(step, pi, energy, cfg, rng);
}

ExploreResult exploratory_learn(const std::vector<double>& energy, const Kernel& p_target, const TuneConfig& cfg,
                                Rng& rng) {
  validate(cfg);
  const std::size_t n = energy.size();
  if (p_target.size() != n) throw Error(ErrorCode::DimensionMismatch, "energy has wrong length");
  if (!(cfg.beta_explore < cfg.beta_target)) {
    throw Error(ErrorCode::InvalidArgument, "exploration must run hotter than the target");
  }
  std::vector<double> logw(n);
  for (std::size_t x = 0; x < n; ++x) logw[x] = -cfg.beta_target * energy[x];
  if (!Distribution::from_log_weights(logw).approx_equal(p_target.pi(), tolerances().probability)) {
    throw Error(ErrorCode::ReferenceMismatch, "target kernel is not for exp(-beta_target H)");
  }

  constexpr std::size_t kUnseen = std::numeric_limits<std::size_t>::max();
  std::vector<std::uint64_t> visits(n, 0);
  std::vector<std::size_t> first_visit(n, kUnseen);
  std::size_t x = cfg.initial_state;
  if (x >= n) throw Error(ErrorCode::InvalidArgument, "initial state out of range");
  visits[x] = 1;
  first_visit[x] = 0;
  for (std::size_t step = 0; step < cfg.total_steps; ++step) {
    const auto y = static_cast<std::size_t>(rng.below(n));
    const double log_ratio = -cfg.beta_explore * (energy[y] - energy[x]);
    if (log_ratio >= 0.0 || rng.uniform() < std::exp(log_ratio)) x = y;
    if (visits[x]++ == 0) first_visit[x] = step + 1;
  }
  LearnedAction action = learn_partition(energy, visits, first_visit, cfg.k, cfg.grouping);
  Kernel g = build_orbit_kernel(OrbitKernelKind::Gibbs, action.partition, p_target.pi());
  Kernel gpg = gibbs_sandwich(p_target, action.partition);
  return {std::move(action), std::move(g), std::move(gpg)};
}

}  // namespace orbitmc
