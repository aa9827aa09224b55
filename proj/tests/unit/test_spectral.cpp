#include "orbitmc/experiments/examples.hpp"
#include "orbitmc/optimal_design.hpp"
#include "orbitmc/orbit_kernels.hpp"
#include "orbitmc/spectral.hpp"

#include "../support/instances.hpp"
#include "../support/oracles.hpp"

#include <doctest.h>

#include <numbers>

using namespace orbitmc;
using inst::expect_error;
using inst::max_abs;

TEST_CASE("reversible spectra") {
  for (std::size_t n = 3; n <= 50; ++n) {
    const SpectralSummary s = spectrum_reversible(experiments::lazy_walk_matrix(n), experiments::lazy_walk_stationary(n));
    for (std::size_t m = 1; m <= n; ++m) {
      const double expected =
          0.5 + 0.5 * std::cos(static_cast<double>(m - 1) * std::numbers::pi / static_cast<double>(n - 1));
      CHECK(std::abs(s.eigenvalues[m - 1] - expected) <= 1e-10);
    }
  }
  const Distribution pi({0.1, 0.2, 0.3, 0.4});
  const SpectralSummary sp = spectrum_reversible(stationary_kernel(pi));
  CHECK(sp.eigenvalues[0] == doctest::Approx(1.0).epsilon(1e-12));
  for (std::size_t i = 1; i < 4; ++i) CHECK(std::abs(sp.eigenvalues[i]) <= 1e-12);
  CHECK(sp.slem <= 1e-12);
  CHECK(sp.abs_gap == doctest::Approx(1.0));

  const Kernel star = star_orbit_sampler(Distribution({0.1, 0.3, 0.6}));
  const SpectralSummary ss = spectrum_reversible(star);
  CHECK(ss.eigenvalues[0] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(std::abs(ss.eigenvalues[1]) <= 1e-12);
  CHECK(ss.eigenvalues[2] == doctest::Approx(1.0 - 1.0 / 0.6).epsilon(1e-12));
  CHECK(ss.slem == doctest::Approx(1.0 / 0.6 - 1.0).epsilon(1e-12));

  Mat cyc = Mat::Zero(3, 3);
  cyc(0, 1) = cyc(1, 2) = cyc(2, 0) = 1.0;
  expect_error(ErrorCode::NotReversible, [&] { spectrum_reversible(validate_kernel(cyc, Distribution::uniform(3))); });
}

TEST_CASE("spectrum agrees with a general eigensolver") {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const auto in = inst::random_instance(seed);
    const auto ref = oracle::eigenvalues(in.p.matrix(), in.pi);
    const SpectralSummary s = spectrum_reversible(in.p);
    for (std::size_t i = 0; i < ref.size(); ++i) CHECK(std::abs(s.eigenvalues[i] - ref[i]) <= 1e-9);
    CHECK(s.lambda2 == doctest::Approx(ref[1]));
    CHECK(s.slem == doctest::Approx(std::max(std::abs(ref[1]), std::abs(ref.back()))));
  }
}

TEST_CASE("theta constant") {
  for (std::size_t n = 3; n <= 15; ++n) {
    CHECK(theta_mh(OrbitPartition::single_orbit(n), Distribution::uniform(n)).theta ==
          doctest::Approx(1.0 / static_cast<double>(n - 1)).epsilon(1e-14));
  }
  CHECK(theta_mh(OrbitPartition::single_orbit(11), Distribution::uniform(11)).theta == doctest::Approx(0.1));
  const Distribution eq({0.25, 0.25, 0.5});
  CHECK(theta_mh(OrbitPartition(3, {{0, 1}, {2}}), eq).theta == doctest::Approx(1.0).epsilon(1e-14));
  expect_error(ErrorCode::AllSingletons, [&] { theta_mh(OrbitPartition::singletons(3), eq); });

  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const auto in = inst::random_instance(seed);
    if (in.part.all_singletons()) continue;
    const Kernel m = build_orbit_kernel(OrbitKernelKind::MetropolisHastings, in.part, in.pi);
    const ThetaConstant th = theta_mh(in.part, in.pi);
    CAPTURE(seed);
    CHECK(std::abs(th.theta - slem_on_orbit_complement(m, in.part)) <= 1e-10);
    bool all_large = true;
    for (const auto& o : in.part.orbits()) all_large = all_large && o.size() > 2;
    if (all_large) {
      const double mm = static_cast<double>(in.part.largest_orbit_size());
      CHECK(th.theta <= (mm - 2.0) / (mm - 1.0) + 1e-12);
    }
  }
}

TEST_CASE("independence sampler spectrum") {
  CHECK(mh_independence_spectrum({1.0}) == std::vector<double>{1.0});
  const auto u = mh_independence_spectrum({0.25, 0.25, 0.25, 0.25});
  CHECK(u[0] == doctest::Approx(1.0));
  for (std::size_t j = 1; j < 4; ++j) CHECK(std::abs(u[j]) <= 1e-14);

  // Dense oracle: Mbar(x,y) = (1/m) min(1, w(y)/w(x)) off the diagonal.
  const std::vector<double> w{0.4, 0.25, 0.2, 0.1, 0.05};
  const std::size_t m = w.size();
  Mat mbar = Mat::Zero(5, 5);
  for (std::size_t x = 0; x < m; ++x) {
    double off = 0.0;
    for (std::size_t y = 0; y < m; ++y) {
      if (x == y) continue;
      mbar(oracle::idx(x), oracle::idx(y)) = std::min(1.0, w[y] / w[x]) / static_cast<double>(m);
      off += mbar(oracle::idx(x), oracle::idx(y));
    }
    mbar(oracle::idx(x), oracle::idx(x)) = 1.0 - off;
  }
  auto ref = oracle::eigenvalues(mbar, Distribution(w));
  auto got = mh_independence_spectrum(w);
  std::sort(got.rbegin(), got.rend());
  REQUIRE(got.size() == ref.size());
  for (std::size_t i = 0; i < ref.size(); ++i) CHECK(std::abs(got[i] - ref[i]) <= 1e-10);
  expect_error(ErrorCode::NotSorted, [] { mh_independence_spectrum({0.2, 0.8}); });
}

TEST_CASE("power bound and approximation time") {
  CHECK(slem_power_bound(0.7, 0.0, 1) == 0.0);
  CHECK(slem_power_bound(0.9, 0.5, 2) == doctest::Approx(0.50625).epsilon(1e-15));
  CHECK(approximation_time(1e-3, 0.5, 1.0) == 12);
  CHECK(approximation_time(1e-4, 0.1, 1.0) == 5);
  CHECK(approximation_time(4.0, 0.5, 1.0) <= 1);
  CHECK(approximation_time(10.0, 0.3, 0.5) <= 1);
  expect_error(ErrorCode::ThetaDegenerate, [] { approximation_time(1e-3, 1.0, 1.0); });
  expect_error(ErrorCode::ThetaDegenerate, [] { approximation_time(1e-3, 0.0, 1.0); });
}

TEST_CASE("asymptotic variance") {
  const Distribution pi({0.1, 0.2, 0.3, 0.4});
  const Vec f = center(Vec{{1.0, -2.0, 0.5, 3.0}}, pi);
  CHECK(asymptotic_variance(f, stationary_kernel(pi)) == doctest::Approx(pi_inner(f, f, pi)).epsilon(1e-12));
  expect_error(ErrorCode::NotCentered, [&] { asymptotic_variance(Vec{{1.0, 1.0, 1.0, 1.0}}, stationary_kernel(pi)); });
  expect_error(ErrorCode::SingularFundamentalMatrix, [&] { asymptotic_variance(f, identity_kernel(pi)); });

  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const auto in = inst::random_instance(seed);
    Rng rng(seed, 9);
    Vec g(static_cast<Eigen::Index>(in.pi.size()));
    for (Eigen::Index i = 0; i < g.size(); ++i) g(i) = standard_normal(rng);
    const Vec fc = center(g, in.pi);
    CHECK(std::abs(asymptotic_variance(fc, in.p) - asymptotic_variance_variational(fc, in.p)) <=
          1e-8 * std::max(1.0, asymptotic_variance(fc, in.p)));

    // On the second eigenfunction the variance is |f|^2 (1+l)/(1-l).
    const Mat s = symmetrize(in.p.matrix(), in.pi);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(s);
    const Eigen::Index top2 = s.rows() - 2;
    const double lam = es.eigenvalues()(top2);
    Vec ef = es.eigenvectors().col(top2);
    for (Eigen::Index i = 0; i < ef.size(); ++i) ef(i) /= std::sqrt(in.pi[static_cast<std::size_t>(i)]);
    CHECK(asymptotic_variance(ef, in.p) ==
          doctest::Approx(pi_inner(ef, ef, in.pi) * (1.0 + lam) / (1.0 - lam)).epsilon(1e-8));
  }

  CHECK(worst_case_variance(stationary_kernel(pi)) == doctest::Approx(1.0));
  CHECK(worst_case_variance(validate_kernel(experiments::lazy_walk_matrix(3), experiments::lazy_walk_stationary(3))) ==
        doctest::Approx(3.0).epsilon(1e-12));
  expect_error(ErrorCode::DegenerateGap, [&] { worst_case_variance(identity_kernel(pi)); });
}

TEST_CASE("orbit kernels absorb G") {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const auto in = inst::random_instance(seed);
    const Mat g = oracle::gibbs(in.part, in.pi);
    for (auto kind : {OrbitKernelKind::MetropolisHastings, OrbitKernelKind::Barker}) {
      const Mat k = build_orbit_kernel(kind, in.part, in.pi).matrix();
      CHECK(max_abs(g * k, g) <= 1e-12);
      CHECK(max_abs(k * g, g) <= 1e-12);
    }
    // R = M - G kills orbit-constant functions.
    const Mat r = build_orbit_kernel(OrbitKernelKind::MetropolisHastings, in.part, in.pi).matrix() - g;
    Rng rng(seed, 3);
    Vec f(static_cast<Eigen::Index>(in.pi.size()));
    std::vector<double> per_orbit(in.part.num_orbits());
    for (double& v : per_orbit) v = standard_normal(rng);
    for (Eigen::Index x = 0; x < f.size(); ++x) f(x) = per_orbit[in.part.orbit_of(static_cast<std::size_t>(x))];
    CHECK((r * f).cwiseAbs().maxCoeff() <= 1e-12);
  }
}
