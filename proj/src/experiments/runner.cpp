#include "orbitmc/experiments/runner.hpp"

#include "internal.hpp"
#include "orbitmc/experiments/examples.hpp"
#include "orbitmc/io.hpp"

#include <chrono>

namespace orbitmc::experiments {

namespace detail {

using nlohmann::json;

LoadedModel load_model(const json& params) {
  std::optional<LoadedModel> m;
  if (has_param(params, "example")) {
    NamedExample ex = example_by_name(param_string(params, "example", ""));
    m = LoadedModel{ex.name, ex.pi, ex.matrix, ex.partition};
  } else if (has_param(params, "kernel_file")) {
    const std::string path = param_string(params, "kernel_file", "");
    io::KernelFile kf = io::read_kernel_json_file(path);
    std::optional<Mat> mat;
    if (kf.matrix.size() > 0) mat = kf.matrix;
    m = LoadedModel{path, kf.pi, mat, std::nullopt};
  } else if (has_param(params, "pi_csv")) {
    const std::string path = param_string(params, "pi_csv", "");
    Distribution pi = io::read_csv_distribution_file(path);
    std::optional<Mat> mat;
    if (has_param(params, "matrix_csv")) mat = io::read_csv_matrix_file(param_string(params, "matrix_csv", ""));
    m = LoadedModel{path, pi, mat, std::nullopt};
  } else {
    throw Error(ErrorCode::ConfigParse, "no model given: use example, kernel_file or pi_csv");
  }
  if (has_param(params, "partition_file")) {
    m->partition = io::read_partition_json_file(param_string(params, "partition_file", ""), m->pi.size());
  } else if (has_param(params, "partition")) {
    const json& p = params.at("partition");
    m->partition = io::parse_partition_json(p.is_string() ? p.get<std::string>() : p.dump(), m->pi.size());
  }
  return std::move(*m);
}

Kernel require_kernel(const LoadedModel& m) {
  if (!m.matrix) throw Error(ErrorCode::ConfigParse, "model '" + m.source + "' has no transition matrix");
  return validate_kernel(*m.matrix, m.pi);
}

const OrbitPartition& require_partition(const LoadedModel& m) {
  if (!m.partition) throw Error(ErrorCode::ConfigParse, "model '" + m.source + "' has no partition");
  return *m.partition;
}

double tol_or(const ExperimentConfig& cfg, double fallback) { return cfg.tol ? *cfg.tol : fallback; }

std::string one_based(std::size_t i) { return std::to_string(i + 1); }

Table matrix_table(const std::string& name, const Mat& m) {
  Table t{name, {}, {}};
  for (Eigen::Index c = 0; c < m.cols(); ++c) t.columns.push_back(one_based(static_cast<std::size_t>(c)));
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    std::vector<double> row(m.row(r).data(), m.row(r).data() + m.cols());
    t.rows.emplace_back(one_based(static_cast<std::size_t>(r)), std::move(row));
  }
  return t;
}

Table vector_table(const std::string& name, const std::string& column, const std::vector<double>& v) {
  Table t{name, {column}, {}};
  for (std::size_t i = 0; i < v.size(); ++i) t.rows.emplace_back(one_based(i), std::vector<double>{v[i]});
  return t;
}

}  // namespace detail

ExperimentReport run(const ExperimentConfig& config) {
  using namespace detail;
  const auto start = std::chrono::steady_clock::now();
  ExperimentReport report = [&] {
    if (config.kind == "kernel") return run_kernel(config);
    if (config.kind == "spectra") return run_spectra(config);
    if (config.kind == "kl") return run_kl(config);
    if (config.kind == "design") return run_design(config);
    if (config.kind == "altproj") return run_altproj(config);
    if (config.kind == "curie-weiss") return run_curie_weiss(config);
    if (config.kind == "tune") return run_tune(config);
    if (config.kind == "golden") return run_golden(config);
    throw Error(ErrorCode::ConfigParse, "unknown kind '" + config.kind + "'");
  }();
  if (config.timing) {
    report.set_wall_time(std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count());
  }
  return report;
}

}  // namespace orbitmc::experiments
