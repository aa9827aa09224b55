#pragma once

#include <json.hpp>

#include <cstdint>
#include <optional>
#include <string>

namespace orbitmc::experiments {

/// Declarative experiment: which study to run and its parameters. Loaded
/// from a JSON object {"kind": ..., "seed": ..., "tol": ..., "params": {...}}
/// or assembled from command-line flags.
struct ExperimentConfig {
  std::string kind;
  std::uint64_t seed = 0;
  std::optional<double> tol;
  bool timing = false;
  std::string out;
  std::string format = "json";
  nlohmann::json params = nlohmann::json::object();

  /// Echo written into reports. Always carries the seed and RNG name.
  nlohmann::json echo() const;
};

ExperimentConfig parse_config(const std::string& json_text);
ExperimentConfig load_config(const std::string& path);

bool is_known_kind(const std::string& kind);

/// Typed parameter access; wrong types raise ConfigParse.
double param_double(const nlohmann::json& params, const std::string& key, double fallback);
std::int64_t param_int(const nlohmann::json& params, const std::string& key, std::int64_t fallback);
std::string param_string(const nlohmann::json& params, const std::string& key, const std::string& fallback);
bool has_param(const nlohmann::json& params, const std::string& key);

}  // namespace orbitmc::experiments
