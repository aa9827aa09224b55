#include "internal.hpp"
#include "orbitmc/curie_weiss.hpp"
#include "orbitmc/io.hpp"
#include "orbitmc/rng.hpp"
#include "orbitmc/spectral.hpp"
#include "orbitmc/stats.hpp"

#include <cmath>

namespace orbitmc::experiments::detail {

namespace {

std::uint64_t encode(const std::vector<int>& spins) {
  std::uint64_t s = 0;
  for (std::size_t j = 0; j < spins.size(); ++j) {
    if (spins[j] > 0) s |= std::uint64_t{1} << j;
  }
  return s;
}

std::vector<int> decode(std::uint64_t s, unsigned d) {
  std::vector<int> spins(d);
  for (unsigned j = 0; j < d; ++j) spins[j] = (s >> j) & 1U ? 1 : -1;
  return spins;
}

// Empirical row of the streaming sampler from `start`. Trials own their
// (seed, stream) pair and counts are merged in trial order.
std::vector<std::uint64_t> sample_row(const CwStarSampler& sampler, unsigned d, std::uint64_t start,
                                      std::uint64_t samples, std::uint64_t seed, std::uint64_t stream_base,
                                      int trials) {
  const std::size_t n = std::size_t{1} << d;
  std::vector<std::vector<std::uint64_t>> partial(static_cast<std::size_t>(trials),
                                                  std::vector<std::uint64_t>(n, 0));
#pragma omp parallel for schedule(static)
  for (int t = 0; t < trials; ++t) {
    Rng rng(seed, stream_base + static_cast<std::uint64_t>(t));
    const std::uint64_t lo = samples * static_cast<std::uint64_t>(t) / static_cast<std::uint64_t>(trials);
    const std::uint64_t hi = samples * static_cast<std::uint64_t>(t + 1) / static_cast<std::uint64_t>(trials);
    auto& counts = partial[static_cast<std::size_t>(t)];
    for (std::uint64_t s = lo; s < hi; ++s) {
      std::vector<int> spins = decode(start, d);
      sampler.step(spins, rng);
      ++counts[encode(spins)];
    }
  }
  std::vector<std::uint64_t> total(n, 0);
  for (const auto& c : partial) {
    for (std::size_t i = 0; i < n; ++i) total[i] += c[i];
  }
  return total;
}

}  // namespace

ExperimentReport run_curie_weiss(const ExperimentConfig& cfg) {
  ExperimentReport r(cfg.echo());
  const auto d = static_cast<unsigned>(param_int(cfg.params, "d", 8));
  const double beta = param_double(cfg.params, "beta", 2.25);
  const double eps = param_double(cfg.params, "eps", 0.25);
  const auto samples = static_cast<std::uint64_t>(param_int(cfg.params, "samples", 1000000));
  const int trials = static_cast<int>(param_int(cfg.params, "trials", 16));
  const double alpha = param_double(cfg.params, "chi2_alpha", 1e-3);
  const CwModel model{d, beta};
  require_valid(model);
  if (trials < 1) throw Error(ErrorCode::ConfigParse, "trials must be >= 1");

  unsigned kcut = 0;
  if (!has_param(cfg.params, "kcut") || (cfg.params["kcut"].is_string() && cfg.params["kcut"] == "auto")) {
    kcut = choose_kcut(model);
  } else {
    kcut = static_cast<unsigned>(param_int(cfg.params, "kcut", 1));
  }
  const double tail = cw_tail_mass(model, kcut);
  const double delta = tail - 0.5;
  r.add_scalar("beta_star", beta_star(d));
  r.add_scalar("kcut", kcut);
  r.add_scalar("tail_mass", tail);
  r.add_scalar("delta", delta);
  r.add_table(vector_table("orbit_masses", "mass", cw_orbit_masses(model)));

  // Monotone orbit masses at and above the threshold temperature.
  Table mono{"orbit_mass_monotone", {"beta", "monotone"}, {}};
  bool all_mono = true;
  for (unsigned dd : {2U, 4U, 6U, 8U}) {
    for (double scale : {1.0, 1.5, 2.0}) {
      const double b = beta_star(dd) * scale;
      const std::vector<double> w = cw_orbit_masses({dd, b});
      bool ok = true;
      for (std::size_t i = 1; i < w.size(); ++i) ok = ok && w[i] >= w[i - 1] * (1.0 - 1e-12);
      all_mono = all_mono && ok;
      mono.rows.emplace_back("d=" + std::to_string(dd) + ",x" + io::format_double(scale), std::vector<double>{b, ok ? 1.0 : 0.0});
    }
  }
  r.add_table(std::move(mono));
  r.check_true("orbit masses non-decreasing for beta >= beta*", all_mono);

  const Kernel star = cw_star_kernel(model, kcut);
  const SpectralSummary ss = spectrum_reversible(star);
  r.check_close("star SLEM = 1/pi(B) - 1", ss.slem, 1.0 / tail - 1.0, 1e-10);

  const unsigned long long t_star = mixing_time_exact(star, eps);
  const double star_bound = star_mixing_upper_bound(model, delta, eps);
  r.add_scalar("t_mix.star", static_cast<double>(t_star));
  r.add_scalar("t_mix.star.upper_bound", star_bound);
  r.check_le("t_mix(star) <= polynomial bound", static_cast<double>(t_star), star_bound);

  const Kernel glauber = glauber_kernel(model);
  const unsigned long long t_gl = mixing_time_exact(glauber, eps);
  const double gl_bound = glauber_mixing_lower_bound(model, eps);
  const double relax_bound = relaxation_mixing_lower_bound(glauber, eps);
  r.add_scalar("t_mix.glauber", static_cast<double>(t_gl));
  r.add_scalar("t_mix.glauber.lower_bound", gl_bound);
  r.add_scalar("t_mix.glauber.relaxation_lower_bound", relax_bound);
  r.add_scalar("lambda2.glauber", spectrum_reversible(glauber).lambda2);
  r.check_ge("t_mix(glauber) >= exponential lower bound", static_cast<double>(t_gl), gl_bound);
  r.check_ge("t_mix(glauber) >= relaxation lower bound", static_cast<double>(t_gl), relax_bound);

  if (samples > 0) {
    const CwStarSampler sampler(model, kcut);
    // One start in the tail (all spins down) and one outside it (zero magnetisation).
    const std::uint64_t tail_start = 0;
    const std::uint64_t outside_start = (std::uint64_t{1} << (d / 2)) - 1;
    Table chi{"chi_square", {"statistic", "dof", "p_value"}, {}};
    bool all_ok = true;
    std::uint64_t stream = 0;
    for (std::uint64_t start : {tail_start, outside_start}) {
      const auto counts = sample_row(sampler, d, start, samples, cfg.seed, stream, trials);
      stream += static_cast<std::uint64_t>(trials);
      const Mat& pm = star.matrix();
      std::vector<double> row(pm.cols());
      for (Eigen::Index j = 0; j < pm.cols(); ++j) row[static_cast<std::size_t>(j)] = pm(static_cast<Eigen::Index>(start), j);
      const ChiSquareResult res = chi_square_test(counts, row);
      all_ok = all_ok && res.p_value > alpha;
      chi.rows.emplace_back("x=" + std::to_string(start), std::vector<double>{res.statistic, static_cast<double>(res.dof), res.p_value});
    }
    r.add_table(std::move(chi));
    r.check_true("streaming sampler rows match dense kernel (chi-square)", all_ok);
  }
  return r;
}

}  // namespace orbitmc::experiments::detail
