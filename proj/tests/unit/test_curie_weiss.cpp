#include "orbitmc/curie_weiss.hpp"
#include "orbitmc/orbit_kernels.hpp"
#include "orbitmc/spectral.hpp"
#include "orbitmc/stats.hpp"

#include "../support/instances.hpp"
#include "../support/oracles.hpp"

#include <doctest.h>

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>

using namespace orbitmc;
using inst::expect_error;
using inst::max_abs;

namespace {

// Brute-force Gibbs weights straight from the Hamiltonian.
std::vector<double> brute_weights(unsigned d, double beta) {
  std::vector<double> w(std::size_t{1} << d);
  for (std::uint64_t x = 0; x < w.size(); ++x) {
    const double s = 2.0 * std::popcount(x) - static_cast<double>(d);
    const double m = s / d;
    w[x] = std::exp(beta * 0.5 * d * m * m);
  }
  return w;
}

std::uint64_t to_bits(const std::vector<int>& spins) {
  std::uint64_t x = 0;
  for (std::size_t j = 0; j < spins.size(); ++j)
    if (spins[j] > 0) x |= std::uint64_t{1} << j;
  return x;
}

}  // namespace

TEST_CASE("curie-weiss distribution") {
  const Distribution u = cw_distribution({2, 0.0});
  for (std::size_t x = 0; x < 4; ++x) CHECK(u[x] == doctest::Approx(0.25).epsilon(1e-15));

  const Distribution p = cw_distribution({2, 1.0});
  const double z = 2.0 * std::exp(1.0) + 2.0;
  CHECK(p[0] == doctest::Approx(std::exp(1.0) / z).epsilon(1e-14));
  CHECK(p[3] == doctest::Approx(std::exp(1.0) / z).epsilon(1e-14));
  CHECK(p[1] == doctest::Approx(1.0 / z).epsilon(1e-14));
  CHECK(p[2] == doctest::Approx(1.0 / z).epsilon(1e-14));

  for (unsigned d : {2u, 4u, 6u, 8u}) {
    for (double beta : {0.0, 0.7, 2.25}) {
      const Distribution pi = cw_distribution({d, beta});
      const Distribution brute = Distribution::from_weights(brute_weights(d, beta));
      for (std::size_t x = 0; x < pi.size(); ++x) CHECK(pi[x] == doctest::Approx(brute[x]).epsilon(1e-13));
      // Constant on orbits.
      const OrbitPartition part = cw_orbit_partition(d);
      for (const auto& o : part.orbits())
        for (std::size_t x : o) CHECK(pi[x] == doctest::Approx(pi[o.front()]).epsilon(1e-13));
    }
  }
  CHECK(cw_spin_sum(0b1011, 4) == 2);
  CHECK(cw_orbit_index(0b0000, 4) == 2);
  CHECK(cw_orbit_index(0b0101, 4) == 0);
  CHECK(cw_orbit_index(0b0111, 4) == 1);

  expect_error(ErrorCode::TooLarge, [] { cw_distribution({16, 1.0}); });
  expect_error(ErrorCode::InvalidArgument, [] { cw_distribution({3, 1.0}); });
  expect_error(ErrorCode::InvalidArgument, [] { cw_distribution({4, -1.0}); });
  expect_error(ErrorCode::TooLarge, [] { glauber_kernel({16, 1.0}); });
}

TEST_CASE("curie-weiss orbits and masses") {
  const OrbitPartition part = cw_orbit_partition(4);
  REQUIRE(part.num_orbits() == 3);
  CHECK(part.orbit(0).size() == 6);
  CHECK(part.orbit(1).size() == 8);
  CHECK(part.orbit(2).size() == 2);

  // Exact aggregation: the zero-magnetisation orbit is counted once.
  const std::vector<double> m = cw_orbit_masses({4, 1.25});
  const double w0 = 6.0, w1 = 8.0 * std::exp(0.625), w2 = 2.0 * std::exp(2.5);
  const double z = w0 + w1 + w2;
  CHECK(m[0] == doctest::Approx(w0 / z).epsilon(1e-13));
  CHECK(m[1] == doctest::Approx(w1 / z).epsilon(1e-13));
  CHECK(m[2] == doctest::Approx(w2 / z).epsilon(1e-13));

  const std::vector<double> flat = cw_orbit_masses({2, 0.0});
  CHECK(flat[0] == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(flat[1] == doctest::Approx(0.5).epsilon(1e-15));

  for (unsigned d = 2; d <= 12; d += 2) {
    for (double beta : {0.0, 0.5, 1.0, 3.0}) {
      const CwModel model{d, beta};
      const std::vector<double> masses = cw_orbit_masses(model);
      const Distribution bar = cw_orbit_partition(d).orbit_masses(cw_distribution(model));
      REQUIRE(masses.size() == d / 2 + 1);
      for (std::size_t i = 0; i < masses.size(); ++i) CHECK(std::abs(masses[i] - bar[i]) <= 1e-12);
      // Ratio between neighbouring orbits; the step out of the
      // zero-magnetisation orbit picks up the sign pair.
      for (unsigned i = 0; i + 1 < masses.size(); ++i) {
        const double half = d / 2.0;
        double expect = (half - i) / (half + i + 1) * std::exp(2.0 * beta * (2.0 * i + 1) / d);
        if (i == 0) expect *= 2.0;
        CHECK(masses[i + 1] / masses[i] == doctest::Approx(expect).epsilon(1e-12));
      }
      // Z(beta, d) <= 2^d exp(d beta / 2).
      double zsum = 0.0;
      for (double w : brute_weights(d, beta)) zsum += w;
      CHECK(zsum <= std::ldexp(std::exp(d * beta / 2.0), static_cast<int>(d)) * (1 + 1e-12));
    }
  }
}

TEST_CASE("beta star and monotone masses") {
  CHECK(beta_star(4) == 1.25);
  CHECK(beta_star(2) == 1.0);
  CHECK(beta_star(8) == 2.25);
  for (unsigned d = 2; d <= 40; d += 2) {
    for (double f : {1.0, 1.3, 2.0, 5.0}) {
      const std::vector<double> m = cw_orbit_masses({d, f * beta_star(d)});
      CAPTURE(d);
      CHECK(std::is_sorted(m.begin(), m.end()));
    }
  }
  // Large d never touches the state space.
  const std::vector<double> big = cw_orbit_masses({400, 2.0 * beta_star(400)});
  CHECK(big.size() == 201);
  CHECK(std::abs(std::accumulate(big.begin(), big.end(), 0.0) - 1.0) <= 1e-12);
}

TEST_CASE("merged tail partition") {
  const OrbitPartition full = merged_tail_partition(4, 2);
  CHECK(full.same_blocks(cw_orbit_partition(4)));
  const OrbitPartition one = merged_tail_partition(4, 1);
  REQUIRE(one.num_orbits() == 2);
  CHECK(one.orbit(0) == cw_orbit_partition(4).orbit(0));
  CHECK(one.orbit(1).size() == 10);
  expect_error(ErrorCode::InvalidArgument, [] { merged_tail_partition(4, 0); });
  expect_error(ErrorCode::InvalidArgument, [] { merged_tail_partition(4, 3); });

  double prev = 0.0;
  for (double beta : {1.0, 2.0, 4.0, 8.0, 16.0}) {
    const double t = cw_tail_mass({8, beta}, 2);
    CHECK(t >= prev);
    prev = t;
  }
  CHECK(prev >= 1.0 - 1e-9);
  CHECK(cw_tail_mass({8, 2.25}, 1) == doctest::Approx(1.0 - cw_orbit_masses({8, 2.25})[0]).epsilon(1e-13));

  CHECK(choose_kcut({8, 2.25}) == 1);
  // d = 2 at beta = 0: the tail is exactly half the mass.
  CHECK(cw_tail_mass({2, 0.0}, 1) == doctest::Approx(0.5));
  expect_error(ErrorCode::MassNotDominant, [] { choose_kcut({2, 0.0}); });
}

TEST_CASE("star kernel") {
  for (const CwModel model : {CwModel{4, 3.0}, CwModel{2, 2.0}, CwModel{6, 2.0}, CwModel{8, 2.25}}) {
    for (unsigned kcut = 1; kcut <= model.d / 2; ++kcut) {
      const double tail = cw_tail_mass(model, kcut);
      if (tail <= 0.5) {
        expect_error(ErrorCode::MassNotDominant, [&] { cw_star_kernel(model, kcut); });
        continue;
      }
      CAPTURE(model.d);
      CAPTURE(kcut);
      const Kernel k = cw_star_kernel(model, kcut);
      CHECK(k.is_reversible());
      const Distribution& pi = k.pi();
      const OrbitPartition blocks = merged_tail_partition(model.d, kcut);
      const std::size_t b = blocks.num_orbits() - 1;
      // Piecewise definition.
      for (std::size_t x = 0; x < pi.size(); ++x) {
        for (std::size_t y = 0; y < pi.size(); ++y) {
          const bool xb = blocks.orbit_of(x) == b, yb = blocks.orbit_of(y) == b;
          double expect = 0.0;
          if (xb != yb) expect = pi[y] / tail;
          else if (xb) expect = pi[y] * (2 * tail - 1) / (tail * tail);
          CHECK(std::abs(k.matrix()(oracle::idx(x), oracle::idx(y)) - expect) <= 1e-14);
        }
      }
      // Spectrum {1, 0, ..., 0, 1 - 1/pi(B)}.
      const std::vector<double> ev = oracle::eigenvalues(k.matrix(), pi);
      CHECK(ev.front() == doctest::Approx(1.0).epsilon(1e-10));
      CHECK(ev.back() == doctest::Approx(1.0 - 1.0 / tail).epsilon(1e-10));
      for (std::size_t i = 1; i + 1 < ev.size(); ++i) CHECK(std::abs(ev[i]) <= 1e-10);
      CHECK(spectrum_reversible(k).slem == doctest::Approx(1.0 / tail - 1.0).epsilon(1e-10));
    }
  }
}

TEST_CASE("star mixing time and bounds") {
  const CwModel model{8, 2.25};
  const unsigned kcut = choose_kcut(model);
  const double delta = cw_tail_mass(model, kcut) - 0.5;
  REQUIRE(delta > 0.0);
  const Kernel star = cw_star_kernel(model, kcut);
  const auto t = mixing_time_exact(star, 0.25);
  CHECK(t == oracle::mixing_time(star.matrix(), star.pi(), 0.25));
  CHECK(static_cast<double>(t) <= star_mixing_upper_bound(model, delta, 0.25));
  CHECK(star_mixing_upper_bound(model, delta, 0.25) ==
        doctest::Approx((8 * 2.25 / 2 + 8 * std::log(2.0) - std::log(0.25)) / (2 * delta)).epsilon(1e-14));
  CHECK(glauber_mixing_lower_bound(model, 0.25) ==
        doctest::Approx((std::exp(2.25 * 8) / std::pow(4.0, 8) - 1) * std::log(2.0)).epsilon(1e-14));
  expect_error(ErrorCode::MassNotDominant, [&] { star_mixing_upper_bound(model, 0.0, 0.25); });
}

TEST_CASE("glauber kernel") {
  const Kernel g0 = glauber_kernel({2, 0.0});
  for (std::size_t x = 0; x < 4; ++x) {
    for (std::size_t y = 0; y < 4; ++y) {
      const int flips = std::popcount(x ^ y);
      const double expect = flips == 1 ? 0.5 : 0.0;
      CHECK(g0.matrix()(oracle::idx(x), oracle::idx(y)) == doctest::Approx(expect).epsilon(1e-15));
    }
  }
  for (unsigned d : {2u, 4u, 6u}) {
    const CwModel model{d, 2.0};
    const Kernel g = glauber_kernel(model);
    CHECK(g.is_reversible());
    const Distribution& pi = g.pi();
    for (std::uint64_t x = 0; x < pi.size(); ++x) {
      for (unsigned j = 0; j < d; ++j) {
        const std::uint64_t y = x ^ (std::uint64_t{1} << j);
        const double expect = std::min(1.0, pi[y] / pi[x]) / d;
        CHECK(g.matrix()(oracle::idx(x), oracle::idx(y)) == doctest::Approx(expect).epsilon(1e-13));
      }
    }
    const SpectralSummary s = spectrum_reversible(g);
    const std::vector<double> ev = oracle::eigenvalues(g.matrix(), pi);
    CHECK(s.lambda2 == doctest::Approx(ev[1]).epsilon(1e-10));
    // The relaxation bound is a genuine lower bound on the exact mixing time.
    const auto t = mixing_time_exact(g, 0.25);
    CHECK(t == oracle::mixing_time(g.matrix(), pi, 0.25));
    CHECK(static_cast<double>(t) >= relaxation_mixing_lower_bound(g, 0.25));
  }
}

TEST_CASE("exact mixing time") {
  const Distribution pi({0.1, 0.2, 0.3, 0.4});
  CHECK(mixing_time_exact(stationary_kernel(pi), 0.25) == 1);
  CHECK(mixing_time_exact(stationary_kernel(pi), 1e-9) == 1);
  expect_error(ErrorCode::NoConvergence, [&] { mixing_time_exact(identity_kernel(pi), 0.25); });
  expect_error(ErrorCode::InvalidArgument, [&] { mixing_time_exact(stationary_kernel(pi), 0.0); });

  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    const inst::Instance in = inst::random_instance(seed);
    const Kernel lazy = lazify(in.p);
    for (double eps : {0.25, 0.05, 1e-3}) {
      CAPTURE(seed);
      CHECK(mixing_time_exact(lazy, eps) == oracle::mixing_time(lazy.matrix(), in.pi, eps));
    }
  }
  // A slow chain, to exercise the doubling past a few hundred steps.
  const Kernel slow = glauber_kernel({8, 2.25});
  CHECK(mixing_time_exact(slow, 0.25) == oracle::mixing_time(slow.matrix(), slow.pi(), 0.25));
}

TEST_CASE("star sampler streaming steps") {
  const CwModel model{4, 3.0};
  const unsigned kcut = 1;
  const Kernel dense = cw_star_kernel(model, kcut);
  const CwStarSampler sampler(model, kcut);
  CHECK(sampler.tail_mass() == doctest::Approx(cw_tail_mass(model, kcut)).epsilon(1e-14));
  const OrbitPartition blocks = merged_tail_partition(4, kcut);

  // Seeded determinism on both encodings.
  {
    Rng a(7, 0), b(7, 0);
    std::uint64_t x = 0, y = 0;
    for (int i = 0; i < 200; ++i) {
      x = sampler.step(x, a);
      y = sampler.step(y, b);
      CHECK(x == y);
    }
  }
  // Rows from a state outside the tail and from one inside it.
  for (const std::uint64_t start : {std::uint64_t{0b0101}, std::uint64_t{0b1111}}) {
    Rng rng(11, start);
    std::vector<std::uint64_t> counts(16, 0);
    const std::size_t n_samples = 200000;
    for (std::size_t s = 0; s < n_samples; ++s) ++counts[sampler.step(start, rng)];
    std::vector<double> row(16);
    for (std::size_t y = 0; y < 16; ++y) row[y] = dense.matrix()(oracle::idx(start), oracle::idx(y));
    const ChiSquareResult chi = chi_square_test(counts, row);
    CAPTURE(start);
    CHECK(chi.p_value > 1e-3);
    if (blocks.orbit_of(start) != blocks.num_orbits() - 1) {
      for (std::size_t y = 0; y < 16; ++y)
        if (blocks.orbit_of(y) != blocks.num_orbits() - 1) CHECK(counts[y] == 0);
    }
  }
  // The spin-vector form draws the same law.
  {
    Rng rng(12, 0);
    std::vector<std::uint64_t> counts(16, 0);
    std::vector<int> spins{1, -1, 1, -1};
    const std::uint64_t start = to_bits(spins);
    for (int s = 0; s < 200000; ++s) {
      std::vector<int> v = spins;
      sampler.step(v, rng);
      for (int e : v) REQUIRE((e == 1 || e == -1));
      ++counts[to_bits(v)];
    }
    std::vector<double> row(16);
    for (std::size_t y = 0; y < 16; ++y) row[y] = dense.matrix()(oracle::idx(start), oracle::idx(y));
    CHECK(chi_square_test(counts, row).p_value > 1e-3);
  }
  std::vector<int> wrong(3, 1);
  Rng rng(1, 0);
  expect_error(ErrorCode::DimensionMismatch, [&] { sampler.step(wrong, rng); });
  expect_error(ErrorCode::MassNotDominant, [] { CwStarSampler({2, 0.0}, 1); });
}

TEST_CASE("chi-square test") {
  const ChiSquareResult perfect = chi_square_test({25, 25, 50}, {0.25, 0.25, 0.5});
  CHECK(perfect.statistic == 0.0);
  CHECK(perfect.dof == 2);
  CHECK(perfect.p_value == doctest::Approx(1.0));
  // 10 vs 5/5/...: statistic (10-5)^2/5 + (0-5)^2/5 = 10, one degree of freedom.
  const ChiSquareResult two = chi_square_test({10, 0}, {0.5, 0.5});
  CHECK(two.statistic == doctest::Approx(10.0));
  CHECK(two.p_value == doctest::Approx(0.0015654).epsilon(1e-4));
  CHECK(chi_square_test({5, 5, 1}, {0.5, 0.5, 0.0}).p_value == 0.0);
}
