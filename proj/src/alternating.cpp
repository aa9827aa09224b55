#include "orbitmc/alternating.hpp"

#include "orbitmc/orbit_kernels.hpp"
#include "orbitmc/parallel/dense.hpp"
#include "orbitmc/spectral.hpp"

#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace orbitmc {

namespace {

class DisjointSet {
 public:
  explicit DisjointSet(std::size_t n) : parent_(n), size_(n, 1) {
    std::iota(parent_.begin(), parent_.end(), std::size_t{0});
  }

  std::size_t find(std::size_t x) {
    std::size_t root = x;
    while (parent_[root] != root) root = parent_[root];
    while (parent_[x] != root) {
      const std::size_t next = parent_[x];
      parent_[x] = root;
      x = next;
    }
    return root;
  }

  bool unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (size_[a] < size_[b]) std::swap(a, b);
    parent_[b] = a;
    size_[a] += size_[b];
    return true;
  }

 private:
  std::vector<std::size_t> parent_;
  std::vector<std::size_t> size_;
};

std::size_t require_common_size(const std::vector<OrbitPartition>& parts) {
  if (parts.empty()) throw Error(ErrorCode::InvalidArgument, "need at least one partition");
  const std::size_t n = parts.front().num_states();
  for (const auto& p : parts) {
    if (p.num_states() != n) throw Error(ErrorCode::DimensionMismatch, "partitions cover different state counts");
  }
  return n;
}

double cosine_given_join(const OrbitPartition& part1, const OrbitPartition& part2, const Distribution& pi,
                         std::size_t join_classes) {
  const OverlapMatrix t = overlap_matrix(part1, part2, pi);
  // One unit singular value per join class; the cosine is the next one.
  return join_classes < t.singular_values.size() ? t.singular_values[join_classes] : 0.0;
}

}  // namespace

OverlapMatrix overlap_matrix(const OrbitPartition& part1, const OrbitPartition& part2, const Distribution& pi) {
  require_same_size(part1, pi);
  require_same_size(part2, pi);
  const Distribution m1 = part1.orbit_masses(pi);
  const Distribution m2 = part2.orbit_masses(pi);
  Mat t = Mat::Zero(static_cast<Eigen::Index>(part2.num_orbits()), static_cast<Eigen::Index>(part1.num_orbits()));
  for (std::size_t x = 0; x < pi.size(); ++x) {
    t(static_cast<Eigen::Index>(part2.orbit_of(x)), static_cast<Eigen::Index>(part1.orbit_of(x))) += pi[x];
  }
  for (Eigen::Index j = 0; j < t.rows(); ++j) {
    for (Eigen::Index i = 0; i < t.cols(); ++i) {
      t(j, i) /= std::sqrt(m1[static_cast<std::size_t>(i)] * m2[static_cast<std::size_t>(j)]);
    }
  }
  Eigen::JacobiSVD<Mat> svd(t);
  const Vec sv = svd.singularValues();
  return {std::move(t), std::vector<double>(sv.data(), sv.data() + sv.size())};
}

double cosine(const OrbitPartition& part1, const OrbitPartition& part2, const Distribution& pi) {
  const auto join = join_partitions({part1, part2});
  return cosine_given_join(part1, part2, pi, join.classes.num_orbits());
}

double generalized_cosine(const std::vector<OrbitPartition>& parts, const Distribution& pi) {
  if (parts.size() < 2) throw Error(ErrorCode::InvalidArgument, "need at least two partitions");
  double prod = 1.0;
  for (std::size_t i = 0; i + 1 < parts.size(); ++i) {
    const std::vector<OrbitPartition> suffix(parts.begin() + static_cast<std::ptrdiff_t>(i) + 1, parts.end());
    const OrbitPartition tail = join_partitions(suffix).classes;
    const double c = cosine(parts[i], tail, pi);
    prod *= 1.0 - c * c;
  }
  return std::sqrt(std::max(0.0, 1.0 - prod));
}

EquivalenceClasses join_partitions(const std::vector<OrbitPartition>& parts) {
  const std::size_t n = require_common_size(parts);
  DisjointSet ds(n);
  std::vector<std::pair<std::size_t, std::size_t>> unions;
  for (const auto& part : parts) {
    for (const auto& orbit : part.orbits()) {
      for (std::size_t a = 1; a < orbit.size(); ++a) {
        if (ds.unite(orbit[0], orbit[a])) unions.emplace_back(orbit[0], orbit[a]);
      }
    }
  }
  // Scanning states in order labels classes by their smallest member.
  std::vector<std::size_t> labels(n);
  for (std::size_t x = 0; x < n; ++x) labels[x] = ds.find(x);
  return {OrbitPartition::from_labels(labels), std::move(unions)};
}

std::pair<EquivalenceClasses, Kernel> limiting_projection(const std::vector<OrbitPartition>& parts,
                                                          const Distribution& pi) {
  EquivalenceClasses eq = join_partitions(parts);
  Kernel g = build_orbit_kernel(OrbitKernelKind::Gibbs, eq.classes, pi);
  return {std::move(eq), std::move(g)};
}

Mat alternating_product(const std::vector<OrbitPartition>& parts, const Distribution& pi) {
  require_common_size(parts);
  Mat acc = build_orbit_kernel(OrbitKernelKind::Gibbs, parts.front(), pi).matrix();
  for (std::size_t i = 1; i < parts.size(); ++i) {
    acc = parallel::multiply(acc, build_orbit_kernel(OrbitKernelKind::Gibbs, parts[i], pi).matrix());
  }
  return acc;
}

double alternating_distance(const std::vector<OrbitPartition>& parts, const Distribution& pi,
                            unsigned long long t) {
  const Mat prod = parallel::power(alternating_product(parts, pi), t);
  const auto limit = limiting_projection(parts, pi);
  return pi_operator_norm(prod - limit.second.matrix(), pi);
}

GridPair uniform_grid_partitions(std::size_t n, std::size_t m, std::size_t k) {
  if (m == 0 || k == 0 || m * k != n) {
    throw Error(ErrorCode::NotFactorable, std::to_string(n) + " != " + std::to_string(m) + " * " + std::to_string(k));
  }
  std::vector<std::vector<std::size_t>> blocks(m);
  std::vector<std::vector<std::size_t>> residues(m);
  for (std::size_t x = 0; x < n; ++x) {
    blocks[x / k].push_back(x);
    residues[x % m].push_back(x);
  }
  return {OrbitPartition(n, std::move(blocks)), OrbitPartition(n, std::move(residues)), k % m == 0};
}

namespace {

void schedule_level(const std::vector<std::vector<std::size_t>>& groups, unsigned e, std::size_t n,
                    std::vector<OrbitPartition>& out) {
  if (e == 1) {
    out.emplace_back(n, groups);
    return;
  }
  const std::size_t side = std::size_t{1} << (e / 2);
  std::vector<std::vector<std::size_t>> chunks;
  std::vector<std::vector<std::size_t>> strided;
  for (const auto& g : groups) {
    for (std::size_t c = 0; c < side; ++c) {
      chunks.emplace_back(g.begin() + static_cast<std::ptrdiff_t>(c * side),
                          g.begin() + static_cast<std::ptrdiff_t>((c + 1) * side));
      std::vector<std::size_t> r;
      for (std::size_t pos = c; pos < g.size(); pos += side) r.push_back(g[pos]);
      strided.push_back(std::move(r));
    }
  }
  schedule_level(chunks, e / 2, n, out);
  schedule_level(strided, e / 2, n, out);
}

}  // namespace

std::vector<OrbitPartition> recursive_exact_schedule(unsigned d) {
  if (d < 2 || (d & (d - 1)) != 0) {
    throw Error(ErrorCode::BadShape, "d = " + std::to_string(d) + " is not a power of two >= 2");
  }
  if (d > 16) throw Error(ErrorCode::TooLarge, "d = " + std::to_string(d));
  const std::size_t n = std::size_t{1} << d;
  std::vector<std::size_t> all(n);
  std::iota(all.begin(), all.end(), std::size_t{0});
  std::vector<OrbitPartition> out;
  schedule_level({all}, d, n, out);
  return out;
}

std::vector<OrbitPartition> transposition_partitions(std::size_t n) {
  if (n < 2) throw Error(ErrorCode::InvalidArgument, "need at least two states");
  std::vector<OrbitPartition> out;
  for (std::size_t i = 1; i < n; ++i) {
    std::vector<std::vector<std::size_t>> orbits{{0, i}};
    for (std::size_t x = 1; x < n; ++x) {
      if (x != i) orbits.push_back({x});
    }
    out.emplace_back(n, std::move(orbits));
  }
  return out;
}

VShapedModel v_shaped_model(std::size_t m, std::size_t k, double beta) {
  if (m == 0 || k == 0) throw Error(ErrorCode::InvalidArgument, "m and k must be positive");
  const std::size_t n = 2 * m * m * k;
  std::vector<double> logw(n);
  for (std::size_t x = 0; x < n; ++x) {
    // States are 1-based in the density: x + 1.
    const double off = static_cast<double>((x + 1) % (2 * k)) - static_cast<double>(k + 1);
    logw[x] = beta * std::abs(off);
  }
  std::vector<std::vector<std::size_t>> d(m * m);
  for (std::size_t x = 0; x < n; ++x) d[x / (2 * k)].push_back(x);
  std::vector<std::vector<std::size_t>> o(m);
  std::vector<std::vector<std::size_t>> c(m);
  for (std::size_t b = 0; b < m * m; ++b) {
    o[b / m].insert(o[b / m].end(), d[b].begin(), d[b].end());
    c[b % m].insert(c[b % m].end(), d[b].begin(), d[b].end());
  }
  return {Distribution::from_log_weights(logw), OrbitPartition(n, std::move(d)), OrbitPartition(n, std::move(o)),
          OrbitPartition(n, std::move(c))};
}

}  // namespace orbitmc
