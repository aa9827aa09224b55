#pragma once

#include "orbitmc/experiments/report.hpp"

#include <optional>

namespace orbitmc::experiments {

struct GoldenOptions {
  /// Overrides the numerical tolerance; published values that are rounded
  /// keep at least their rounding tolerance.
  std::optional<double> tol;
  /// Sensitivity hook: evaluates G P G with the pi(O_j) normalisation
  /// dropped, which must make the suite fail.
  bool corrupt_gpg = false;
};

/// Regression checks against every published worked value the library
/// reproduces: the small examples, the closed forms and the Curie-Weiss
/// and alternating-projection constructions.
ExperimentReport golden_suite(const GoldenOptions& options, nlohmann::json config_echo);

}  // namespace orbitmc::experiments
