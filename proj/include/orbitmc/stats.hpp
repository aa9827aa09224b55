#pragma once

#include <cstdint>
#include <vector>

namespace orbitmc {

struct ChiSquareResult {
  double statistic = 0.0;
  unsigned dof = 0;
  double p_value = 1.0;
};

/// Pearson goodness-of-fit of `counts` against `probs`. Cells with zero
/// expected probability are dropped; any count landing there gives p = 0.
ChiSquareResult chi_square_test(const std::vector<std::uint64_t>& counts, const std::vector<double>& probs);

}  // namespace orbitmc
