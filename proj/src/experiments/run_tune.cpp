#include "internal.hpp"
#include "orbitmc/curie_weiss.hpp"
#include "orbitmc/io.hpp"
#include "orbitmc/orbit_kernels.hpp"
#include "orbitmc/rng.hpp"
#include "orbitmc/spectral.hpp"
#include "orbitmc/tuning.hpp"

#include <algorithm>
#include <cmath>
#include <optional>

namespace orbitmc::experiments::detail {

using nlohmann::json;

namespace {

// Curie-Weiss Hamiltonian -s^2/(2d) per dense state.
std::vector<double> cw_energy(unsigned d) {
  std::vector<double> h(std::size_t{1} << d);
  for (std::size_t x = 0; x < h.size(); ++x) {
    const double s = cw_spin_sum(x, d);
    h[x] = -s * s / (2.0 * d);
  }
  return h;
}

TuneConfig tune_config(const ExperimentConfig& cfg) {
  TuneConfig t;
  t.k = static_cast<std::size_t>(param_int(cfg.params, "k", 2));
  t.block_len = static_cast<std::size_t>(param_int(cfg.params, "block", 50));
  t.total_steps = static_cast<std::size_t>(param_int(cfg.params, "steps", 5000));
  t.beta_explore = param_double(cfg.params, "beta_explore", 0.0);
  t.beta_target = param_double(cfg.params, "beta_target", 1.0);
  t.initial_state = static_cast<std::size_t>(param_int(cfg.params, "initial_state", 0));
  t.seed = cfg.seed;
  const std::string g = param_string(cfg.params, "grouping", "energy");
  if (g == "energy") {
    t.grouping = Grouping::SmallestEnergy;
  } else if (g == "empirical") {
    t.grouping = Grouping::LargestEmpirical;
  } else {
    throw Error(ErrorCode::ConfigParse, "grouping must be energy or empirical");
  }
  return t;
}

void report_action(ExperimentReport& r, const std::string& prefix, const LearnedAction& a, const Kernel& p,
                   double tol) {
  r.add_note(prefix + ".merged", json(a.merged));
  const Kernel gpg = gibbs_sandwich(p, a.partition);
  const double rho_p = spectrum_reversible(p).slem;
  const double rho_g = spectrum_reversible(gpg).slem;
  r.add_scalar(prefix + ".slem.P", rho_p);
  r.add_scalar(prefix + ".slem.GPG", rho_g);
  r.check_le(prefix + ": slem(GPG) <= slem(P)", rho_g, rho_p, tol);
  r.check_true(prefix + ": GPG stationary", gpg.is_stationary());
}

}  // namespace

ExperimentReport run_tune(const ExperimentConfig& cfg) {
  ExperimentReport r(cfg.echo());
  const std::string mode = param_string(cfg.params, "mode", "adaptive");
  const std::string model_kind = param_string(cfg.params, "model_kind", has_param(cfg.params, "d") ? "curie-weiss" : "file");
  const double tol = tol_or(cfg, 1e-10);
  TuneConfig tc = tune_config(cfg);
  r.add_note("mode", mode);

  std::vector<double> energy;
  std::optional<Kernel> target;
  if (model_kind == "curie-weiss") {
    const auto d = static_cast<unsigned>(param_int(cfg.params, "d", 4));
    const double beta = param_double(cfg.params, "beta", mode == "explore" ? tc.beta_target : 2.0);
    if (mode == "explore") tc.beta_target = beta;
    energy = cw_energy(d);
    target = glauber_kernel({d, beta});
  } else {
    const LoadedModel model = load_model(cfg.params);
    target = require_kernel(model);
    require_reversible(*target);
    // F = -log pi, so exp(-beta F) = pi only at beta = 1.
    for (double w : model.pi.probs()) energy.push_back(-std::log(w));
    tc.beta_target = 1.0;
  }

  Rng rng(cfg.seed, 0);
  if (mode == "adaptive") {
    const TuneTrace trace = adaptive_tune(*target, energy, tc, rng);
    Table blocks{"blocks", {"merged_size", "min_energy", "max_energy"}, {}};
    for (std::size_t b = 0; b < trace.actions.size(); ++b) {
      const auto& e = trace.actions[b].merged_energy;
      blocks.rows.emplace_back(one_based(b), std::vector<double>{static_cast<double>(e.size()),
                                                                 *std::min_element(e.begin(), e.end()),
                                                                 *std::max_element(e.begin(), e.end())});
    }
    r.add_table(std::move(blocks));
    if (!trace.actions.empty()) {
      report_action(r, "final", trace.actions.back(), *target, tol);
      std::vector<double> visits;
      for (auto v : trace.actions.back().visits) visits.push_back(static_cast<double>(v));
      r.add_table(vector_table("visits", "count", visits));
    }
  } else if (mode == "explore") {
    const ExploreResult res = exploratory_learn(energy, *target, tc, rng);
    report_action(r, "explore", res.action, *target, tol);
    r.check_le("returned GPG matches closed form",
               (res.sandwich.matrix() - gibbs_sandwich(*target, res.action.partition).matrix()).cwiseAbs().maxCoeff(),
               0.0, 1e-12);
  } else {
    throw Error(ErrorCode::ConfigParse, "tune mode must be adaptive or explore");
  }
  return r;
}

}  // namespace orbitmc::experiments::detail
