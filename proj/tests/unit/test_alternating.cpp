#include "orbitmc/alternating.hpp"
#include "orbitmc/orbit_kernels.hpp"
#include "orbitmc/spectral.hpp"

#include "../support/instances.hpp"
#include "../support/oracles.hpp"

#include <doctest.h>

#include <cmath>

using namespace orbitmc;
using inst::expect_error;
using inst::max_abs;

namespace {

Mat gibbs_product(const std::vector<OrbitPartition>& parts, const Distribution& pi) {
  Mat out = Mat::Identity(oracle::idx(pi.size()), oracle::idx(pi.size()));
  for (const auto& p : parts) out = oracle::product(out, oracle::gibbs(p, pi));
  return out;
}

Mat matrix_power(const Mat& a, unsigned t) {
  Mat out = Mat::Identity(a.rows(), a.cols());
  for (unsigned i = 0; i < t; ++i) out = oracle::product(out, a);
  return out;
}

Mat join_gibbs(const std::vector<OrbitPartition>& parts, const Distribution& pi) {
  return oracle::gibbs(OrbitPartition::from_labels(oracle::join_labels(parts, pi.size())), pi);
}

}  // namespace

TEST_CASE("overlap matrix examples") {
  const Distribution u = Distribution::uniform(4);
  const OrbitPartition o(4, {{0, 1}, {2, 3}});
  const OrbitPartition c(4, {{0, 2}, {1, 3}});

  const OverlapMatrix t = overlap_matrix(o, c, u);
  REQUIRE(t.t.rows() == 2);
  REQUIRE(t.t.cols() == 2);
  CHECK(max_abs(t.t, Mat::Constant(2, 2, 0.5)) <= 1e-15);
  CHECK(t.singular_values[0] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(std::abs(t.singular_values[1]) <= 1e-12);
  CHECK(cosine(o, c, u) <= 1e-12);

  const Distribution pi({0.1, 0.2, 0.3, 0.25, 0.15});
  const OrbitPartition a(5, {{0, 3}, {1}, {2, 4}});
  const OverlapMatrix same = overlap_matrix(a, a, pi);
  for (double s : same.singular_values) CHECK(s == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(cosine(a, a, pi) == 0.0);

  const OverlapMatrix col = overlap_matrix(OrbitPartition::single_orbit(5), OrbitPartition::singletons(5), pi);
  REQUIRE(col.t.cols() == 1);
  for (std::size_t j = 0; j < 5; ++j) CHECK(col.t(oracle::idx(j), 0) == doctest::Approx(std::sqrt(pi[j])).epsilon(1e-14));
  CHECK(col.singular_values[0] == doctest::Approx(1.0).epsilon(1e-12));
  for (std::size_t i = 1; i < col.singular_values.size(); ++i) CHECK(std::abs(col.singular_values[i]) <= 1e-12);
}

TEST_CASE("overlap matrix invariants and the cosine cross-check on random pairs") {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    Rng rng(seed, 3);
    const std::size_t n = 3 + static_cast<std::size_t>(rng.below(10));
    const Distribution pi = random_distribution(n, rng);
    const OrbitPartition p1 = random_partition(n, 1 + static_cast<std::size_t>(rng.below(n)), rng);
    const OrbitPartition p2 = random_partition(n, 1 + static_cast<std::size_t>(rng.below(n)), rng);
    CAPTURE(seed);

    const OverlapMatrix t = overlap_matrix(p1, p2, pi);
    CHECK(t.t.minCoeff() >= 0.0);
    CHECK(t.t.maxCoeff() <= 1.0 + 1e-15);
    CHECK(t.singular_values[0] == doctest::Approx(1.0).epsilon(1e-10));
    for (std::size_t i = 1; i < t.singular_values.size(); ++i) CHECK(t.singular_values[i] <= t.singular_values[i - 1]);

    const std::vector<OrbitPartition> pair{p1, p2};
    const double c = cosine(p1, p2, pi);
    const Mat g12 = gibbs_product(pair, pi);
    const Mat ginf = join_gibbs(pair, pi);
    CHECK(std::abs(c - oracle::pi_norm(g12 - ginf, pi)) <= 1e-9);

    // Two projections: the error after t rounds is exactly c^(2t-1).
    for (unsigned r = 1; r <= 4; ++r) {
      const double lhs = oracle::pi_norm(matrix_power(g12, r) - ginf, pi);
      CHECK(std::abs(lhs - std::pow(c, 2.0 * r - 1.0)) <= 1e-9);
      CHECK(std::abs(alternating_distance(pair, pi, r) - lhs) <= 1e-9);
    }
    CHECK(std::abs(generalized_cosine(pair, pi) - c) <= 1e-12);
  }
}

TEST_CASE("join of partitions matches a transitive closure") {
  for (std::uint64_t seed = 0; seed < 150; ++seed) {
    Rng rng(seed, 4);
    const std::size_t n = 1 + static_cast<std::size_t>(rng.below(12));
    const std::size_t count = 1 + static_cast<std::size_t>(rng.below(4));
    std::vector<OrbitPartition> parts;
    for (std::size_t i = 0; i < count; ++i) parts.push_back(random_partition(n, 1 + static_cast<std::size_t>(rng.below(n)), rng));
    CAPTURE(seed);

    const EquivalenceClasses eq = join_partitions(parts);
    const OrbitPartition expect = OrbitPartition::from_labels(oracle::join_labels(parts, n));
    CHECK(eq.classes.same_blocks(expect));
    // Classes by smallest member; every input orbit sits inside one class.
    for (std::size_t i = 1; i < eq.classes.num_orbits(); ++i)
      CHECK(eq.classes.orbit(i - 1).front() < eq.classes.orbit(i).front());
    for (const auto& p : parts)
      for (const auto& o : p.orbits())
        for (std::size_t x : o) CHECK(eq.classes.orbit_of(x) == eq.classes.orbit_of(o.front()));
    CHECK(eq.unions.size() == n - eq.classes.num_orbits());

    const Distribution pi = random_distribution(n, rng);
    const auto [classes, ginf] = limiting_projection(parts, pi);
    CHECK(classes.classes == eq.classes);
    CHECK(max_abs(ginf.matrix(), oracle::gibbs(eq.classes, pi)) <= 1e-14);
  }
}

TEST_CASE("limiting projection special cases") {
  const Distribution pi({0.1, 0.2, 0.3, 0.25, 0.15});
  const OrbitPartition a(5, {{0, 3}, {1}, {2, 4}});
  const auto [one, g1] = limiting_projection({a}, pi);
  CHECK(one.classes.same_blocks(a));
  CHECK(max_abs(g1.matrix(), oracle::gibbs(a, pi)) <= 1e-15);

  const std::vector<OrbitPartition> trans = transposition_partitions(10);
  REQUIRE(trans.size() == 9);
  for (std::size_t i = 0; i < trans.size(); ++i) {
    CHECK(trans[i].num_orbits() == 9);
    CHECK(trans[i].orbit_of(0) == trans[i].orbit_of(i + 1));
  }
  const Distribution pi10 = Distribution::from_weights(std::vector<double>{1, 2, 3, 4, 5, 6, 7, 8, 9, 10});
  const auto [cls, ginf] = limiting_projection(trans, pi10);
  CHECK(cls.classes.num_orbits() == 1);
  CHECK(max_abs(ginf.matrix(), oracle::stationary(pi10)) <= 1e-15);
  // The repeated product converges there at the generalized-cosine rate.
  const double c = generalized_cosine(trans, pi10);
  CHECK(c < 1.0);
  double prev = 1.0;
  for (unsigned t : {1u, 10u, 200u}) {
    const double dist = alternating_distance(trans, pi10, t);
    CHECK(dist <= std::pow(c, t) + 1e-12);
    CHECK(dist < prev);
    prev = dist;
  }

  expect_error(ErrorCode::InvalidArgument, [] { join_partitions({}); });
  expect_error(ErrorCode::InvalidArgument, [] { transposition_partitions(1); });
  expect_error(ErrorCode::DimensionMismatch, [] {
    join_partitions({OrbitPartition::singletons(3), OrbitPartition::singletons(4)});
  });
}

TEST_CASE("uniform grid partitions") {
  {
    const GridPair g = uniform_grid_partitions(4, 2, 2);
    CHECK(g.exact);
    CHECK(g.blocks == OrbitPartition(4, {{0, 1}, {2, 3}}));
    CHECK(g.residues == OrbitPartition(4, {{0, 2}, {1, 3}}));
    const Distribution u = Distribution::uniform(4);
    CHECK(max_abs(alternating_product({g.blocks, g.residues}, u), oracle::stationary(u)) <= 1e-12);
    CHECK(cosine(g.blocks, g.residues, u) <= 1e-12);
    const auto [cls, ginf] = limiting_projection({g.blocks, g.residues}, u);
    CHECK(cls.classes.num_orbits() == 1);
  }
  {
    const GridPair g = uniform_grid_partitions(12, 3, 4);
    CHECK_FALSE(g.exact);
    CHECK(cosine(g.blocks, g.residues, Distribution::uniform(12)) <= 9.0 / 12.0);
  }
  {
    const GridPair g = uniform_grid_partitions(16, 4, 4);
    CHECK(g.exact);
    const Distribution u = Distribution::uniform(16);
    CHECK(max_abs(alternating_product({g.blocks, g.residues}, u), oracle::stationary(u)) <= 1e-12);
  }
  // Every factorisation: the m^2/n bound, and G1 G2 = Pi exactly when flagged.
  for (std::size_t n = 2; n <= 40; ++n) {
    const Distribution u = Distribution::uniform(n);
    for (std::size_t m = 1; m <= n; ++m) {
      if (n % m != 0) continue;
      const GridPair g = uniform_grid_partitions(n, m, n / m);
      CAPTURE(n);
      CAPTURE(m);
      CHECK(g.blocks.num_orbits() == m);
      CHECK(g.residues.num_orbits() == m);
      CHECK(cosine(g.blocks, g.residues, u) <= static_cast<double>(m * m) / static_cast<double>(n) + 1e-12);
      const double err = max_abs(alternating_product({g.blocks, g.residues}, u), oracle::stationary(u));
      if (g.exact) CHECK(err <= 1e-12);
      else CHECK(err > 1e-6);
    }
  }
  // m = ceil(log n) grids.
  for (std::size_t n : {12, 24, 36, 48, 60, 120}) {
    const auto m = static_cast<std::size_t>(std::ceil(std::log(static_cast<double>(n))));
    REQUIRE(n % m == 0);
    const GridPair g = uniform_grid_partitions(n, m, n / m);
    const double ln = std::log(static_cast<double>(n));
    CAPTURE(n);
    CHECK(cosine(g.blocks, g.residues, Distribution::uniform(n)) <= ln * ln / static_cast<double>(n) + 1e-12);
  }
  expect_error(ErrorCode::NotFactorable, [] { uniform_grid_partitions(16, 3, 5); });
  expect_error(ErrorCode::NotFactorable, [] { uniform_grid_partitions(10, 3, 3); });
}

TEST_CASE("recursive exact schedule") {
  {
    const auto s = recursive_exact_schedule(2);
    REQUIRE(s.size() == 2);
    const GridPair g = uniform_grid_partitions(4, 2, 2);
    CHECK(s[0].same_blocks(g.blocks));
    CHECK(s[1].same_blocks(g.residues));
    const Distribution u = Distribution::uniform(4);
    CHECK(max_abs(gibbs_product(s, u), oracle::stationary(u)) <= 1e-12);
  }
  {
    const auto s = recursive_exact_schedule(4);
    CHECK(s.size() == 4);
    const Distribution u = Distribution::uniform(16);
    for (const auto& p : s) CHECK(p.num_states() == 16);
    CHECK(max_abs(gibbs_product(s, u), oracle::stationary(u)) <= 1e-10);
    CHECK(max_abs(alternating_product(s, u), oracle::stationary(u)) <= 1e-10);
  }
  {
    const auto s = recursive_exact_schedule(8);
    CHECK(s.size() == 8);
    const Distribution u = Distribution::uniform(256);
    CHECK(max_abs(alternating_product(s, u), oracle::stationary(u)) <= 1e-10);
  }
  expect_error(ErrorCode::BadShape, [] { recursive_exact_schedule(1); });
  expect_error(ErrorCode::BadShape, [] { recursive_exact_schedule(3); });
  expect_error(ErrorCode::BadShape, [] { recursive_exact_schedule(0); });
}

TEST_CASE("v-shaped model") {
  struct Case {
    std::size_t m, k;
    double beta;
  };
  for (const Case c : {Case{2, 2, 0.8}, Case{3, 2, 1.5}, Case{2, 3, 0.3}, Case{1, 4, 2.0}}) {
    CAPTURE(c.m);
    CAPTURE(c.k);
    const VShapedModel v = v_shaped_model(c.m, c.k, c.beta);
    const std::size_t n = 2 * c.m * c.m * c.k;
    REQUIRE(v.pi.size() == n);
    REQUIRE(v.blocks.num_orbits() == c.m * c.m);
    const Distribution masses = v.blocks.orbit_masses(v.pi);
    for (double mass : masses.probs())
      CHECK(mass == doctest::Approx(1.0 / static_cast<double>(c.m * c.m)).epsilon(1e-12));
    // Shape on the first block, 1-based position x + 1; position k + 1 is
    // the bottom of the V.
    for (std::size_t x = 0; x < 2 * c.k; ++x) {
      const auto pos = static_cast<double>((x + 1) % (2 * c.k));
      const double expect = c.beta * std::abs(pos - static_cast<double>(c.k + 1));
      CHECK(std::log(v.pi[x] / v.pi[c.k]) == doctest::Approx(expect).epsilon(1e-12));
    }
    CHECK(v.part_o.num_orbits() == c.m);
    CHECK(v.part_c.num_orbits() == c.m);
    const OverlapMatrix t = overlap_matrix(v.part_o, v.part_c, v.pi);
    CHECK(max_abs(t.t, Mat::Constant(oracle::idx(c.m), oracle::idx(c.m), 1.0 / static_cast<double>(c.m))) <= 1e-12);
    CHECK(max_abs(alternating_product({v.part_o, v.part_c}, v.pi), oracle::stationary(v.pi)) <= 1e-12);
  }
  expect_error(ErrorCode::InvalidArgument, [] { v_shaped_model(0, 2, 1.0); });
}

TEST_CASE("generalized cosine") {
  const Distribution pi({0.1, 0.2, 0.3, 0.25, 0.15});
  const OrbitPartition a(5, {{0, 3}, {1}, {2, 4}});
  CHECK(generalized_cosine({a, a, a}, pi) == 0.0);
  expect_error(ErrorCode::InvalidArgument, [&] { generalized_cosine({a}, pi); });

  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    Rng rng(seed, 5);
    const std::size_t n = 3 + static_cast<std::size_t>(rng.below(8));
    const Distribution p = random_distribution(n, rng);
    std::vector<OrbitPartition> parts;
    for (int i = 0; i < 3; ++i) parts.push_back(random_partition(n, 1 + static_cast<std::size_t>(rng.below(n)), rng));
    CAPTURE(seed);

    // Against the definition, with suffix joins from the oracle.
    const std::vector<OrbitPartition> tail12{parts[1], parts[2]};
    const OrbitPartition j12 = OrbitPartition::from_labels(oracle::join_labels(tail12, n));
    const double c0 = cosine(parts[0], j12, p);
    const double c1 = cosine(parts[1], parts[2], p);
    const double expect = std::sqrt(1.0 - (1.0 - c0 * c0) * (1.0 - c1 * c1));
    const double c = generalized_cosine(parts, p);
    CHECK(c == doctest::Approx(expect).epsilon(1e-12));

    const Mat g = gibbs_product(parts, p);
    const Mat ginf = join_gibbs(parts, p);
    for (unsigned r = 1; r <= 5; ++r) CHECK(oracle::pi_norm(matrix_power(g, r) - ginf, p) <= std::pow(c, r) + 1e-9);
  }
}

TEST_CASE("sandwiches by repeated projections approach the join sandwich") {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    Rng rng(seed, 6);
    const std::size_t n = 3 + static_cast<std::size_t>(rng.below(8));
    const Distribution pi = random_distribution(n, rng);
    const Kernel p = random_reversible_kernel(pi, rng);
    std::vector<OrbitPartition> parts;
    const std::size_t count = 2 + static_cast<std::size_t>(rng.below(2));
    for (std::size_t i = 0; i < count; ++i) parts.push_back(random_partition(n, 1 + static_cast<std::size_t>(rng.below(n)), rng));
    CAPTURE(seed);

    const double c = generalized_cosine(parts, pi);
    const double rho = spectrum_reversible(p).slem;
    const Mat ginf = join_gibbs(parts, pi);
    const Mat kinf = oracle::product(oracle::product(ginf, p.matrix()), ginf);
    const double rho_inf = spectrum_reversible(kinf, pi).slem;

    std::vector<OrbitPartition> rev(parts.rbegin(), parts.rend());
    const Mat fwd = gibbs_product(parts, pi);
    const Mat bwd = gibbs_product(rev, pi);
    const Kernel k_inf = validate_kernel(kinf, pi);

    Vec f(oracle::idx(n));
    for (std::size_t x = 0; x < n; ++x) f(oracle::idx(x)) = standard_normal(rng);
    f = center(f, pi);
    const double norm2 = pi_inner(f, f, pi);
    const double v_inf = asymptotic_variance(f, k_inf);

    for (unsigned r = 1; r <= 3; ++r) {
      const Mat a = matrix_power(fwd, r);
      const Mat kn = oracle::product(oracle::product(a, p.matrix()), matrix_power(bwd, r));
      CHECK(spectrum_reversible(kn, pi).slem - rho_inf <= 2.0 * std::pow(c, r) * rho + 1e-10);
      const double vn = asymptotic_variance(f, validate_kernel(kn, pi));
      const double bound = 4.0 * rho / ((1.0 - rho) * (1.0 - rho)) * std::pow(c, r) * norm2;
      CHECK(vn - v_inf <= bound + 1e-9);
    }
  }
}
