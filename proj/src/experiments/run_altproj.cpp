#include "internal.hpp"
#include "orbitmc/alternating.hpp"
#include "orbitmc/io.hpp"
#include "orbitmc/orbit_kernels.hpp"
#include "orbitmc/parallel/dense.hpp"
#include "orbitmc/random_models.hpp"
#include "orbitmc/rng.hpp"
#include "orbitmc/spectral.hpp"

#include <cmath>

namespace orbitmc::experiments::detail {

using nlohmann::json;

namespace {

double distance_to_pi(const Mat& a, const Distribution& pi) {
  return (a - stationary_kernel(pi).matrix()).cwiseAbs().maxCoeff();
}

void report_pair(ExperimentReport& r, const OrbitPartition& a, const OrbitPartition& b, const Distribution& pi,
                 double tol, unsigned max_power) {
  const OverlapMatrix t = overlap_matrix(a, b, pi);
  r.add_table(matrix_table("T", t.t));
  r.add_table(vector_table("singular_values", "sigma", t.singular_values));
  const double c = cosine(a, b, pi);
  const auto [classes, g_inf] = limiting_projection({a, b}, pi);
  const Mat prod = alternating_product({a, b}, pi);
  r.add_scalar("cosine", c);
  r.add_scalar("join_classes", static_cast<double>(classes.classes.num_orbits()));
  r.check_close("cosine vs operator norm of G1G2 - Ginf", c, pi_operator_norm(prod - g_inf.matrix(), pi), tol);
  Table conv{"alternating_distance", {"distance", "c^(2t-1)"}, {}};
  bool eq = true;
  for (unsigned t = 1; t <= max_power; ++t) {
    const double dist = alternating_distance({a, b}, pi, t);
    const double pred = std::pow(c, 2.0 * t - 1.0);
    eq = eq && std::abs(dist - pred) <= tol;
    conv.rows.emplace_back(std::to_string(t), std::vector<double>{dist, pred});
  }
  r.add_table(std::move(conv));
  r.check_true("||(G1G2)^t - Ginf|| = c^(2t-1)", eq);
}

}  // namespace

ExperimentReport run_altproj(const ExperimentConfig& cfg) {
  ExperimentReport r(cfg.echo());
  const std::string mode = param_string(cfg.params, "mode", "grid");
  const double tol = tol_or(cfg, 1e-9);
  const auto powers = static_cast<unsigned>(param_int(cfg.params, "powers", 4));
  r.add_note("mode", mode);

  if (mode == "grid") {
    const auto m = static_cast<std::size_t>(param_int(cfg.params, "m", 2));
    const auto k = static_cast<std::size_t>(param_int(cfg.params, "k", 2));
    const std::size_t n = static_cast<std::size_t>(param_int(cfg.params, "n", static_cast<std::int64_t>(m * k)));
    const GridPair g = uniform_grid_partitions(n, m, k);
    const Distribution pi = Distribution::uniform(n);
    report_pair(r, g.blocks, g.residues, pi, tol, powers);
    const double c = cosine(g.blocks, g.residues, pi);
    r.check_le("cosine <= m^2/n", c, static_cast<double>(m * m) / static_cast<double>(n), tol);
    const double d = distance_to_pi(alternating_product({g.blocks, g.residues}, pi), pi);
    r.add_scalar("max|G1G2 - Pi|", d);
    if (g.exact) r.check_le("G1G2 = Pi", d, 0.0, 1e-12);
  } else if (mode == "schedule") {
    const auto d = static_cast<unsigned>(param_int(cfg.params, "d", 4));
    const std::vector<OrbitPartition> parts = recursive_exact_schedule(d);
    const Distribution pi = Distribution::uniform(parts.front().num_states());
    Table sched{"schedule", {"orbits", "orbit_size"}, {}};
    for (std::size_t i = 0; i < parts.size(); ++i) {
      sched.rows.emplace_back(one_based(i), std::vector<double>{static_cast<double>(parts[i].num_orbits()),
                                                                static_cast<double>(parts[i].largest_orbit_size())});
    }
    r.add_table(std::move(sched));
    r.add_scalar("factors", static_cast<double>(parts.size()));
    r.check_le("product of schedule = Pi", distance_to_pi(alternating_product(parts, pi), pi), 0.0,
               tol_or(cfg, 1e-10));
    r.check_le("factors <= d", static_cast<double>(parts.size()), static_cast<double>(d));
  } else if (mode == "transpositions") {
    const auto n = static_cast<std::size_t>(param_int(cfg.params, "n", 10));
    const std::vector<OrbitPartition> parts = transposition_partitions(n);
    const Distribution pi = has_param(cfg.params, "pi_seed")
                                ? [&] {
                                    Rng rng(static_cast<std::uint64_t>(param_int(cfg.params, "pi_seed", 0)), 0);
                                    return random_distribution(n, rng);
                                  }()
                                : Distribution::uniform(n);
    const auto [classes, g_inf] = limiting_projection(parts, pi);
    r.add_scalar("join_classes", static_cast<double>(classes.classes.num_orbits()));
    r.check_true("single equivalence class", classes.classes.num_orbits() == 1);
    r.check_le("Ginf = Pi", distance_to_pi(g_inf.matrix(), pi), 0.0, 1e-12);
    const double c = generalized_cosine(parts, pi);
    r.add_scalar("generalized_cosine", c);
    Table conv{"alternating_distance", {"distance", "c^t"}, {}};
    bool ok = true;
    for (unsigned t = 1; t <= powers; ++t) {
      const double dist = alternating_distance(parts, pi, t);
      ok = ok && dist <= std::pow(c, t) + tol;
      conv.rows.emplace_back(std::to_string(t), std::vector<double>{dist, std::pow(c, t)});
    }
    r.add_table(std::move(conv));
    r.check_true("||(G1...Gk)^t - Ginf|| <= c^t", ok);
  } else if (mode == "vshape") {
    const auto m = static_cast<std::size_t>(param_int(cfg.params, "m", 2));
    const auto k = static_cast<std::size_t>(param_int(cfg.params, "k", 2));
    const double beta = param_double(cfg.params, "beta", 0.8);
    const VShapedModel v = v_shaped_model(m, k, beta);
    const Distribution dm = v.blocks.orbit_masses(v.pi);
    double spread = 0.0;
    for (double w : dm.probs()) spread = std::max(spread, std::abs(w - 1.0 / static_cast<double>(m * m)));
    r.check_le("block masses = 1/m^2", spread, 0.0, 1e-12);
    const OverlapMatrix t = overlap_matrix(v.part_o, v.part_c, v.pi);
    r.check_le("T entries = 1/m", (t.t.array() - 1.0 / static_cast<double>(m)).abs().maxCoeff(), 0.0, 1e-12);
    r.check_le("G1G2 = Pi", distance_to_pi(alternating_product({v.part_o, v.part_c}, v.pi), v.pi), 0.0, 1e-12);
  } else if (mode == "random") {
    const auto n = static_cast<std::size_t>(param_int(cfg.params, "n", 8));
    const auto k1 = static_cast<std::size_t>(param_int(cfg.params, "k1", 3));
    const auto k2 = static_cast<std::size_t>(param_int(cfg.params, "k2", 3));
    Rng rng(cfg.seed, 0);
    const Distribution pi = random_distribution(n, rng);
    const OrbitPartition a = random_partition(n, k1, rng);
    const OrbitPartition b = random_partition(n, k2, rng);
    r.add_note("part1", json::parse(io::partition_json(a)));
    r.add_note("part2", json::parse(io::partition_json(b)));
    report_pair(r, a, b, pi, tol, powers);
  } else {
    throw Error(ErrorCode::ConfigParse, "unknown altproj mode: " + mode);
  }
  return r;
}

}  // namespace orbitmc::experiments::detail
