#include "orbitmc/stats.hpp"

#include "orbitmc/types.hpp"

#include <boost/math/distributions/chi_squared.hpp>

#include <limits>

namespace orbitmc {

ChiSquareResult chi_square_test(const std::vector<std::uint64_t>& counts, const std::vector<double>& probs) {
  if (counts.size() != probs.size()) throw Error(ErrorCode::DimensionMismatch, "counts and probabilities differ in length");
  std::uint64_t total = 0;
  for (auto c : counts) total += c;
  if (total == 0) throw Error(ErrorCode::InvalidArgument, "no observations");
  ChiSquareResult r;
  unsigned cells = 0;
  for (std::size_t i = 0; i < counts.size(); ++i) {
    if (probs[i] <= 0.0) {
      if (counts[i] > 0) {
        r.statistic = std::numeric_limits<double>::infinity();
        r.p_value = 0.0;
        return r;
      }
      continue;
    }
    const double expected = probs[i] * static_cast<double>(total);
    const double diff = static_cast<double>(counts[i]) - expected;
    r.statistic += diff * diff / expected;
    ++cells;
  }
  if (cells < 2) return r;
  r.dof = cells - 1;
  const boost::math::chi_squared dist(static_cast<double>(r.dof));
  r.p_value = boost::math::cdf(boost::math::complement(dist, r.statistic));
  return r;
}

}  // namespace orbitmc
