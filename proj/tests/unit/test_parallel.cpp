#include "orbitmc/parallel/dense.hpp"
#include "orbitmc/parallel/reference.hpp"
#include "orbitmc/random_models.hpp"

#include "../support/instances.hpp"
#include "../support/oracles.hpp"

#include <doctest.h>

#ifdef _OPENMP
#include <omp.h>
#endif

using namespace orbitmc;
using inst::max_abs;

namespace {

struct Dense {
  Distribution pi;
  OrbitPartition part;
  Mat p;
  Mat a;
};

Dense dense_instance(std::uint64_t seed, std::size_t n) {
  Rng rng(seed, 9);
  Distribution pi = random_distribution(n, rng);
  OrbitPartition part = random_partition(n, 1 + static_cast<std::size_t>(rng.below(n / 3)), rng);
  Mat p = random_reversible_kernel(pi, rng).matrix();
  Mat a(p.rows(), p.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j) a(i, j) = rng.uniform() - 0.5;
  return {std::move(pi), std::move(part), std::move(p), std::move(a)};
}

}  // namespace

TEST_CASE("parallel kernels agree with the serial reference") {
  // Sizes on both sides of the threading threshold.
  for (std::size_t n : {5, 63, 64, 65, 130, 257}) {
    const Dense d = dense_instance(n, n);
    CAPTURE(n);
    CHECK(max_abs(parallel::multiply(d.a, d.p), serial::multiply(d.a, d.p)) <= 1e-13);
    CHECK(max_abs(parallel::sandwich(d.a, d.p, d.a.transpose()), serial::sandwich(d.a, d.p, d.a.transpose())) <= 1e-12);
    CHECK(max_abs(parallel::power(d.p, 37), serial::power(d.p, 37)) <= 1e-12);
    CHECK(max_abs(parallel::power(d.p, 0), Mat::Identity(d.p.rows(), d.p.cols())) == 0.0);
    CHECK(max_abs(parallel::orbit_flow(d.p, d.part, d.pi), serial::orbit_flow(d.p, d.part, d.pi)) <= 1e-14);
    CHECK(max_abs(parallel::gibbs_sandwich(d.p, d.part, d.pi), serial::gibbs_sandwich(d.p, d.part, d.pi)) <= 1e-13);
    CHECK(parallel::max_tv_distance(d.p, d.pi) == doctest::Approx(serial::max_tv_distance(d.p, d.pi)).epsilon(1e-14));
  }
}

TEST_CASE("serial reference against the test oracles") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Dense d = dense_instance(seed, 6 + seed);
    CHECK(max_abs(serial::multiply(d.a, d.p), oracle::product(d.a, d.p)) <= 1e-14);
    const Mat g = oracle::gibbs(d.part, d.pi);
    CHECK(max_abs(serial::gibbs_sandwich(d.p, d.part, d.pi), oracle::product(oracle::product(g, d.p), g)) <= 1e-14);
    CHECK(serial::max_tv_distance(d.p, d.pi) == doctest::Approx(oracle::max_tv(d.p, d.pi)).epsilon(1e-14));
    Mat p3 = oracle::product(oracle::product(d.p, d.p), d.p);
    CHECK(max_abs(serial::power(d.p, 3), p3) <= 1e-14);
  }
}

TEST_CASE("parallel results do not depend on the thread count") {
#ifdef _OPENMP
  const Dense d = dense_instance(1, 200);
  const int saved = omp_get_max_threads();
  omp_set_num_threads(1);
  const Mat one = parallel::gibbs_sandwich(d.p, d.part, d.pi);
  const Mat prod1 = parallel::multiply(d.a, d.p);
  const double tv1 = parallel::max_tv_distance(d.p, d.pi);
  omp_set_num_threads(4);
  CHECK(parallel::max_threads() == 4);
  CHECK(max_abs(parallel::gibbs_sandwich(d.p, d.part, d.pi), one) == 0.0);
  CHECK(max_abs(parallel::multiply(d.a, d.p), prod1) == 0.0);
  CHECK(parallel::max_tv_distance(d.p, d.pi) == tv1);
  omp_set_num_threads(saved);
#else
  MESSAGE("built without OpenMP");
#endif
}
