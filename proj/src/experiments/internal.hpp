#pragma once

#include "orbitmc/experiments/config.hpp"
#include "orbitmc/experiments/report.hpp"
#include "orbitmc/kernel.hpp"
#include "orbitmc/partition.hpp"

#include <optional>
#include <string>

namespace orbitmc::experiments::detail {

struct LoadedModel {
  std::string source;
  Distribution pi;
  std::optional<Mat> matrix;
  std::optional<OrbitPartition> partition;
};

/// Reads "example", "kernel_file", "pi_csv"/"matrix_csv", "partition_file"
/// and inline "partition" from the parameter object.
LoadedModel load_model(const nlohmann::json& params);

Kernel require_kernel(const LoadedModel& m);
const OrbitPartition& require_partition(const LoadedModel& m);

/// The check tolerance: --tol when given, else the built-in default.
double tol_or(const ExperimentConfig& cfg, double fallback);

Table matrix_table(const std::string& name, const Mat& m);
Table vector_table(const std::string& name, const std::string& column, const std::vector<double>& v);
std::string one_based(std::size_t i);

ExperimentReport run_kernel(const ExperimentConfig& cfg);
ExperimentReport run_spectra(const ExperimentConfig& cfg);
ExperimentReport run_kl(const ExperimentConfig& cfg);
ExperimentReport run_design(const ExperimentConfig& cfg);
ExperimentReport run_altproj(const ExperimentConfig& cfg);
ExperimentReport run_curie_weiss(const ExperimentConfig& cfg);
ExperimentReport run_tune(const ExperimentConfig& cfg);
ExperimentReport run_golden(const ExperimentConfig& cfg);

}  // namespace orbitmc::experiments::detail
