#pragma once

#include "orbitmc/experiments/config.hpp"
#include "orbitmc/experiments/report.hpp"

namespace orbitmc::experiments {

/// Dispatches on config.kind. Throws ConfigParse / FileNotFound for bad
/// inputs; failed checks are recorded in the report, not thrown.
ExperimentReport run(const ExperimentConfig& config);

}  // namespace orbitmc::experiments
