#include "orbitmc/experiments/examples.hpp"

#include <charconv>

namespace orbitmc::experiments {

namespace {

Mat from_rows(std::initializer_list<std::initializer_list<double>> rows) {
  Mat m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(rows.begin()->size()));
  Eigen::Index i = 0;
  for (const auto& row : rows) {
    Eigen::Index j = 0;
    for (double v : row) m(i, j++) = v;
    ++i;
  }
  return m;
}

}  // namespace

NamedExample three_state_example() {
  return {"three-state",
          "pi = (0.3, 0.3, 0.4) with orbits {1,2},{3}",
          Distribution({0.3, 0.3, 0.4}),
          from_rows({{0.0, 0.4, 0.6}, {0.4, 0.0, 0.6}, {0.45, 0.45, 0.1}}),
          OrbitPartition(3, {{0, 1}, {2}})};
}

NamedExample four_state_example() {
  return {"four-state",
          "pi = (0.1, 0.2, 0.3, 0.4) with orbits {1,2},{3,4}",
          Distribution({0.1, 0.2, 0.3, 0.4}),
          from_rows({{0.0, 1.0 / 3, 1.0 / 3, 1.0 / 3},
                     {1.0 / 6, 1.0 / 6, 1.0 / 3, 1.0 / 3},
                     {1.0 / 9, 2.0 / 9, 1.0 / 3, 1.0 / 3},
                     {1.0 / 12, 1.0 / 6, 1.0 / 4, 1.0 / 2}}),
          OrbitPartition(4, {{0, 1}, {2, 3}})};
}

NamedExample five_state_example() {
  return {"five-state",
          "pi = (0.05, 0.1, 0.2, 0.25, 0.4) with orbits {1},{2},{3,4,5}",
          Distribution({0.05, 0.1, 0.2, 0.25, 0.4}),
          from_rows({{0.05, 0.1, 0.0, 0.35, 0.5},
                     {0.05, 0.1, 0.6, 0.25, 0.0},
                     {0.05, 0.1, 14.0 / 85, 83.0 / 340, 15.0 / 34},
                     {0.05, 0.1, 14.0 / 85, 83.0 / 340, 15.0 / 34},
                     {0.05, 0.1, 14.0 / 85, 83.0 / 340, 15.0 / 34}}),
          OrbitPartition(5, {{0}, {1}, {2, 3, 4}})};
}

Mat lazy_walk_matrix(std::size_t n) {
  if (n < 2) throw Error(ErrorCode::InvalidArgument, "lazy walk needs at least two states");
  const auto nn = static_cast<Eigen::Index>(n);
  Mat p = Mat::Zero(nn, nn);
  for (Eigen::Index x = 0; x < nn; ++x) {
    p(x, x) = 0.5;
    if (x == 0) {
      p(x, 1) = 0.5;
    } else if (x == nn - 1) {
      p(x, x - 1) = 0.5;
    } else {
      p(x, x - 1) = 0.25;
      p(x, x + 1) = 0.25;
    }
  }
  return p;
}

Distribution lazy_walk_stationary(std::size_t n) {
  std::vector<double> w(n, 2.0);
  w.front() = 1.0;
  w.back() = 1.0;
  return Distribution::from_weights(w);
}

NamedExample lazy_walk_example(std::size_t n) {
  return {"lazy-walk-" + std::to_string(n), "lazy reflecting walk with its stationary law, one orbit",
          lazy_walk_stationary(n), lazy_walk_matrix(n), OrbitPartition::single_orbit(n)};
}

NamedExample example_by_name(const std::string& name) {
  if (name == "three-state") return three_state_example();
  if (name == "four-state") return four_state_example();
  if (name == "five-state") return five_state_example();
  const std::string prefix = "lazy-walk-";
  if (name.rfind(prefix, 0) == 0) {
    std::size_t n = 0;
    const char* first = name.data() + prefix.size();
    const char* last = name.data() + name.size();
    auto res = std::from_chars(first, last, n);
    if (res.ec == std::errc() && res.ptr == last && n >= 2) return lazy_walk_example(n);
  }
  throw Error(ErrorCode::ConfigParse, "unknown example '" + name + "'");
}

std::vector<std::string> example_names() { return {"three-state", "four-state", "five-state", "lazy-walk-<n>"}; }

}  // namespace orbitmc::experiments
