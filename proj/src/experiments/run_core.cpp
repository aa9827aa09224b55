#include "internal.hpp"
#include "orbitmc/io.hpp"
#include "orbitmc/kl_geometry.hpp"
#include "orbitmc/optimal_design.hpp"
#include "orbitmc/orbit_decomposition.hpp"
#include "orbitmc/orbit_kernels.hpp"
#include "orbitmc/parallel/dense.hpp"
#include "orbitmc/spectral.hpp"

#include <algorithm>
#include <cmath>

namespace orbitmc::experiments::detail {

using nlohmann::json;

namespace {

constexpr std::size_t kMatrixTableLimit = 32;

void maybe_matrix(ExperimentReport& r, const std::string& name, const Mat& m) {
  if (static_cast<std::size_t>(m.rows()) <= kMatrixTableLimit) r.add_table(matrix_table(name, m));
}

}  // namespace

ExperimentReport run_kernel(const ExperimentConfig& cfg) {
  ExperimentReport r(cfg.echo());
  const LoadedModel model = load_model(cfg.params);
  const OrbitPartition& part = require_partition(model);
  const double tol = tol_or(cfg, 1e-12);
  const auto powers = static_cast<unsigned long long>(param_int(cfg.params, "powers", 8));

  const Kernel g = build_orbit_kernel(OrbitKernelKind::Gibbs, part, model.pi);
  const Kernel m = build_orbit_kernel(OrbitKernelKind::MetropolisHastings, part, model.pi);
  const Kernel b = build_orbit_kernel(OrbitKernelKind::Barker, part, model.pi);
  maybe_matrix(r, "G", g.matrix());
  maybe_matrix(r, "M", m.matrix());
  maybe_matrix(r, "B", b.matrix());
  for (const Kernel* k : {&g, &m, &b}) {
    const std::string tag = k == &g ? "G" : (k == &m ? "M" : "B");
    r.check_true(tag + " stationary", k->is_stationary());
    r.check_true(tag + " reversible", k->is_reversible());
  }
  r.check_le("G idempotent residual", (parallel::multiply(g.matrix(), g.matrix()) - g.matrix()).cwiseAbs().maxCoeff(),
             0.0, tol);
  const bool two_cycle = has_deterministic_two_cycle(part, model.pi);
  r.add_scalar("deterministic_two_cycle", two_cycle ? 1.0 : 0.0);

  Table dist{"power_distance_to_gibbs", {"mh", "barker"}, {}};
  double prev_m = INFINITY, prev_b = INFINITY;
  bool mono_m = true, mono_b = true;
  for (unsigned long long t = 1; t <= powers; ++t) {
    const double dm = power_distance_to_gibbs(OrbitKernelKind::MetropolisHastings, part, model.pi, t);
    const double db = power_distance_to_gibbs(OrbitKernelKind::Barker, part, model.pi, t);
    mono_m = mono_m && dm <= prev_m + tol;
    mono_b = mono_b && db <= prev_b + tol;
    prev_m = dm;
    prev_b = db;
    dist.rows.emplace_back(std::to_string(t), std::vector<double>{dm, db});
  }
  r.add_table(std::move(dist));
  r.check_true("B^t distance to G non-increasing", mono_b);
  if (!two_cycle) r.check_true("M^t distance to G non-increasing", mono_m);

  if (model.matrix) {
    const Kernel p = require_kernel(model);
    r.add_scalar("P.stationary", p.is_stationary() ? 1.0 : 0.0);
    r.add_scalar("P.reversible", p.is_reversible() ? 1.0 : 0.0);
    const Kernel gpg = gibbs_sandwich(p, part);
    maybe_matrix(r, "GPG", gpg.matrix());
    maybe_matrix(r, "MPM", sandwich(m, p, m).matrix());
    maybe_matrix(r, "BPB", sandwich(b, p, b).matrix());
    r.check_le("GPG closed form vs product", gibbs_sandwich_cross_check(p, part), 0.0, tol);
    if (p.is_stationary()) {
      const Kernel mix = additive_mixture(0.5, g, p);
      r.check_true("(G+P)/2 stationary", mix.is_stationary());
      const Kernel lazy = lazify(p);
      r.check_true("(I+P)/2 stationary", lazy.is_stationary());
    }
  }
  return r;
}

ExperimentReport run_spectra(const ExperimentConfig& cfg) {
  ExperimentReport r(cfg.echo());
  const LoadedModel model = load_model(cfg.params);
  const OrbitPartition& part = require_partition(model);
  const Kernel p = require_kernel(model);
  require_reversible(p);
  const double tol = tol_or(cfg, 1e-10);
  const double eps = param_double(cfg.params, "eps", 1e-3);

  const Kernel g = build_orbit_kernel(OrbitKernelKind::Gibbs, part, p.pi());
  const Kernel m = build_orbit_kernel(OrbitKernelKind::MetropolisHastings, part, p.pi());
  const Kernel b = build_orbit_kernel(OrbitKernelKind::Barker, part, p.pi());
  const Kernel gpg = gibbs_sandwich(p, part);
  const Kernel mpm = sandwich(m, p, m);
  const Kernel bpb = sandwich(b, p, b);

  Table spectra{"spectra", {"lambda2", "slem", "right_gap", "abs_gap"}, {}};
  const auto add = [&](const std::string& name, const Kernel& k) {
    const SpectralSummary s = spectrum_reversible(k);
    spectra.rows.emplace_back(name, std::vector<double>{s.lambda2, s.slem, s.right_gap, s.abs_gap});
    r.add_table(vector_table("eigenvalues." + name, "eigenvalue", s.eigenvalues));
    return s;
  };
  const SpectralSummary sp = add("P", p);
  const SpectralSummary sg = add("GPG", gpg);
  const SpectralSummary sm = add("MPM", mpm);
  const SpectralSummary sb = add("BPB", bpb);
  const Kernel pbar = projection_chain(p, part);
  const SpectralSummary sbar = add("Pbar", pbar);
  r.add_table(std::move(spectra));

  r.check_le("slem(GPG) <= slem(P)", sg.slem, sp.slem, tol);
  r.check_le("slem(MPM) <= slem(P)", sm.slem, sp.slem, tol);
  r.check_le("slem(BPB) <= slem(P)", sb.slem, sp.slem, tol);
  r.check_ge("slem(MPM) >= slem(GPG)", sm.slem, sg.slem, tol);
  r.check_ge("slem(BPB) >= slem(GPG)", sb.slem, sg.slem, tol);
  r.check_le("projection chain unchanged by sandwich",
             (projection_chain(gpg, part).matrix() - pbar.matrix()).cwiseAbs().maxCoeff(), 0.0, 1e-12);

  Table restr{"restriction_lambda2", {"P", "GPG", "GPG_closed_form"}, {}};
  bool closed_ok = true;
  for (std::size_t i = 0; i < part.num_orbits(); ++i) {
    const double lp = spectrum_reversible(restriction_chain(p, part, i).chain).lambda2;
    const auto rg = restriction_chain(gpg, part, i).chain;
    const double lg = spectrum_reversible(rg).lambda2;
    const double lc = part.orbit(i).size() > 1 ? gpg_restriction_spectrum(p, part, i).second : 0.0;
    if (part.orbit(i).size() > 1) closed_ok = closed_ok && std::abs(lg - lc) <= tol;
    restr.rows.emplace_back(one_based(i), std::vector<double>{lp, lg, lc});
  }
  r.add_table(std::move(restr));
  r.check_true("restricted GPG spectrum matches closed form", closed_ok);

  const double gp = gamma(p, part);
  const double gg = gamma(gpg, part);
  r.add_scalar("gamma.P", gp);
  r.add_scalar("gamma.GPG", gg);
  r.check_le("gamma(GPG) <= gamma(P)", gg, gp, tol);
  const JerrumBound jb = jerrum_gap_bound(p, part);
  r.add_scalar("jerrum.bound", jb.bound);
  r.add_scalar("jerrum.projection_gap", jb.projection_gap);
  r.add_scalar("jerrum.min_restriction_gap", jb.min_restriction_gap);
  r.check_le("decomposition bound <= right gap of P", jb.bound, sp.right_gap, tol);

  if (!part.all_singletons()) {
    const ThetaConstant th = theta_mh(part, p.pi());
    r.add_scalar("theta", th.theta);
    r.add_scalar("theta.eigensolver", slem_on_orbit_complement(m, part));
    r.check_close("theta closed form vs eigensolver", th.theta, slem_on_orbit_complement(m, part), tol);
    Table bounds{"sandwich_power_bound", {"slem_gap", "bound"}, {}};
    bool ok = true;
    Mat mk = Mat::Identity(static_cast<Eigen::Index>(p.size()), static_cast<Eigen::Index>(p.size()));
    for (unsigned k = 1; k <= 3; ++k) {
      mk = parallel::multiply(mk, m.matrix());
      const double s = spectrum_reversible(parallel::sandwich(mk, p.matrix(), mk), p.pi()).slem;
      const double bound = slem_power_bound(sp.slem, th.theta, k);
      ok = ok && s - sg.slem <= bound + tol && s - sg.slem >= -tol;
      bounds.rows.emplace_back(std::to_string(k), std::vector<double>{s - sg.slem, bound});
    }
    r.add_table(std::move(bounds));
    r.check_true("0 <= slem(M^k P M^k) - slem(GPG) <= bound, k = 1..3", ok);
    if (th.theta > 0.0 && th.theta < 1.0) {
      r.add_scalar("approximation_time", static_cast<double>(approximation_time(eps, th.theta, sp.slem)));
    }
  }
  if (sp.lambda2 < 1.0 - 1e-12) r.add_scalar("worst_case_variance.P", worst_case_variance(p));
  if (sg.lambda2 < 1.0 - 1e-12) r.add_scalar("worst_case_variance.GPG", worst_case_variance(gpg));
  r.add_scalar("lambda2.Pbar", sbar.lambda2);
  return r;
}

ExperimentReport run_kl(const ExperimentConfig& cfg) {
  ExperimentReport r(cfg.echo());
  const LoadedModel model = load_model(cfg.params);
  const OrbitPartition& part = require_partition(model);
  const Kernel p = require_kernel(model);
  require_stationary(p);
  const double tol = tol_or(cfg, 1e-10);

  const Kernel q = information_projection(p, part);
  const Kernel big_pi = stationary_kernel(p.pi());
  const Kernel m = build_orbit_kernel(OrbitKernelKind::MetropolisHastings, part, p.pi());
  const Kernel b = build_orbit_kernel(OrbitKernelKind::Barker, part, p.pi());

  const auto split = [&](const std::string& tag, const Kernel& base) {
    const Kernel mpm = sandwich(m, base, m);
    const double direct = kl_divergence(base, q);
    const double via_m = kl_divergence(base, mpm) + kl_divergence(mpm, q);
    const double via_g = kl_divergence(base, q) + kl_divergence(q, q);
    r.add_scalar(tag + ".D(P||Q)", direct);
    r.add_scalar(tag + ".D(P||MPM)+D(MPM||Q)", via_m);
    r.add_scalar(tag + ".D(P||GPG)+D(GPG||Q)", via_g);
  };
  split("base", p);
  split("lazy", lazify(p));

  r.add_scalar("membership_residual.P", invariant_set_membership(p, part).residual);
  const auto cert = invariant_set_membership(q, part);
  r.add_table(matrix_table("c.GPG", cert.c));
  r.check_le("GPG in invariant set", cert.residual, 0.0, 1e-12);

  r.check_le("Pythagorean residual, Q = GPG", std::abs(pythagorean_residual(p, q, part)), 0.0, tol);
  r.check_le("Pythagorean residual, Q = Pi", std::abs(pythagorean_residual(p, big_pi, part)), 0.0, tol);

  Table dpi{"dpi_gap", {"Q=GPG", "Q=Pi"}, {}};
  bool dpi_ok = true;
  for (auto kind : {OrbitKernelKind::MetropolisHastings, OrbitKernelKind::Barker}) {
    for (auto side : {Side::Left, Side::Right}) {
      const double a = dpi_gap(p, q, side, kind, part);
      const double c = dpi_gap(p, big_pi, side, kind, part);
      dpi_ok = dpi_ok && a >= -tol && c >= -tol;
      dpi.rows.emplace_back(std::string(to_string(kind)) + (side == Side::Left ? ".left" : ".right"),
                            std::vector<double>{a, c});
    }
  }
  r.add_table(std::move(dpi));
  r.check_true("data-processing gaps non-negative", dpi_ok);

  Table chain{"sandwich_power_kl", {"D(M^tPM^t||Q)", "D(B^tPB^t||Q)"}, {}};
  bool mono = true;
  Mat mt = Mat::Identity(static_cast<Eigen::Index>(p.size()), static_cast<Eigen::Index>(p.size()));
  Mat bt = mt;
  double pm = INFINITY, pb = INFINITY;
  for (int t = 0; t <= 4; ++t) {
    const Kernel km = validate_kernel(parallel::sandwich(mt, p.matrix(), mt), p.pi());
    const Kernel kb = validate_kernel(parallel::sandwich(bt, p.matrix(), bt), p.pi());
    const double dm = kl_divergence(km, q);
    const double db = kl_divergence(kb, q);
    mono = mono && dm <= pm + tol && db <= pb + tol && dm >= -tol && db >= -tol;
    pm = dm;
    pb = db;
    chain.rows.emplace_back(std::to_string(t), std::vector<double>{dm, db});
    mt = parallel::multiply(mt, m.matrix());
    bt = parallel::multiply(bt, b.matrix());
  }
  r.add_table(std::move(chain));
  r.check_true("KL to Q non-increasing along M^t P M^t and B^t P B^t", mono);
  r.check_le("D(GPG||Pi) <= D(P||Pi)", kl_divergence(q, big_pi), kl_divergence(p, big_pi), tol);
  return r;
}

ExperimentReport run_design(const ExperimentConfig& cfg) {
  ExperimentReport r(cfg.echo());
  const LoadedModel model = load_model(cfg.params);
  const Distribution& pi = model.pi;
  const double tol = tol_or(cfg, 1e-10);
  const auto k = static_cast<std::size_t>(
      param_int(cfg.params, "k", model.partition ? static_cast<std::int64_t>(model.partition->num_orbits()) : 2));

  const OrbitPartition best = optimal_partition_for_k(pi, k);
  r.add_note("optimal_partition", json::parse(io::partition_json(best)));
  const Kernel big_pi = stationary_kernel(pi);
  const Kernel g = build_orbit_kernel(OrbitKernelKind::Gibbs, best, pi);
  const Distribution masses = best.orbit_masses(pi);
  double entropy = 0.0;
  for (double w : masses.probs()) entropy -= w * std::log(w);
  r.add_scalar("D(G||Pi)", kl_divergence(g, big_pi));
  r.add_scalar("H(orbit masses)", entropy);
  r.check_close("D(G||Pi) equals orbit-mass entropy", kl_divergence(g, big_pi), entropy, tol);

  // Star sampler on the optimal orbits, tail last.
  std::vector<double> sorted = masses.probs();
  std::sort(sorted.begin(), sorted.end());
  if (sorted.back() > 0.5 && k >= 2) {
    const Kernel star = star_orbit_sampler(Distribution(sorted));
    r.add_table(matrix_table("star", star.matrix()));
    const SpectralSummary s = spectrum_reversible(star);
    r.add_table(vector_table("eigenvalues.star", "eigenvalue", s.eigenvalues));
    r.add_scalar("star.slem", s.slem);
    r.check_close("star nontrivial eigenvalue", s.eigenvalues.back(), 1.0 - 1.0 / sorted.back(), tol);
    r.add_scalar("D(star||Pibar)", kl_divergence(star, stationary_kernel(star.pi())));
  }

  const OrbitPartition& part = model.partition ? *model.partition : best;
  std::size_t wide = 0;
  for (const auto& o : part.orbits()) wide += o.size() > 1 ? 1 : 0;
  if (model.matrix && wide != 1) {
    r.add_note("exact_sampler", "skipped: the partition is not singletons plus one tail orbit");
  } else if (model.matrix) {
    const Kernel p = require_kernel(model);
    const ExactSamplerVerdict v = exact_sampler_check(p, part);
    Table res{"exact_sampler_conditions", {"residual"}, {}};
    for (std::size_t i = 0; i < v.residuals.size(); ++i) {
      res.rows.emplace_back(one_based(i), std::vector<double>{v.residuals[i]});
    }
    r.add_table(std::move(res));
    r.add_scalar("max|GPG - Pi|", v.gpg_distance);
    r.add_scalar("max|P - Pi|", (p.matrix() - big_pi.matrix()).cwiseAbs().maxCoeff());
    r.check_true("exact-sampler verdict agrees with GPG = Pi", v.exact == (v.gpg_distance <= tol));
  }
  return r;
}

}  // namespace orbitmc::experiments::detail
