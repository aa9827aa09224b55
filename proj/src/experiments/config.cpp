#include "orbitmc/experiments/config.hpp"

#include "orbitmc/io.hpp"
#include "orbitmc/rng.hpp"
#include "orbitmc/types.hpp"

#include <array>
#include <algorithm>

namespace orbitmc::experiments {

using nlohmann::json;

namespace {
constexpr std::array<const char*, 8> kKinds = {"kernel", "spectra", "kl", "design", "altproj", "curie-weiss", "tune",
                                               "golden"};
}

bool is_known_kind(const std::string& kind) {
  return std::any_of(kKinds.begin(), kKinds.end(), [&](const char* k) { return kind == k; });
}

json ExperimentConfig::echo() const {
  json j;
  j["kind"] = kind;
  j["seed"] = seed;
  j["rng"] = Rng::kAlgorithm;
  j["tol"] = tol ? json(*tol) : json(nullptr);
  j["params"] = params;
  return j;
}

ExperimentConfig parse_config(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::ConfigParse, e.what());
  }
  if (!j.is_object()) throw Error(ErrorCode::ConfigParse, "config must be a JSON object");
  ExperimentConfig cfg;
  try {
    cfg.kind = j.at("kind").get<std::string>();
    if (j.contains("seed")) cfg.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("tol") && !j.at("tol").is_null()) cfg.tol = j.at("tol").get<double>();
    if (j.contains("timing")) cfg.timing = j.at("timing").get<bool>();
    if (j.contains("out")) cfg.out = j.at("out").get<std::string>();
    if (j.contains("format")) cfg.format = j.at("format").get<std::string>();
    if (j.contains("params")) cfg.params = j.at("params");
  } catch (const json::exception& e) {
    throw Error(ErrorCode::ConfigParse, e.what());
  }
  if (!is_known_kind(cfg.kind)) throw Error(ErrorCode::ConfigParse, "unknown kind '" + cfg.kind + "'");
  if (!cfg.params.is_object()) throw Error(ErrorCode::ConfigParse, "\"params\" must be an object");
  if (cfg.format != "json" && cfg.format != "csv") throw Error(ErrorCode::ConfigParse, "format must be json or csv");
  return cfg;
}

ExperimentConfig load_config(const std::string& path) { return parse_config(io::read_text_file(path)); }

bool has_param(const json& params, const std::string& key) {
  return params.is_object() && params.contains(key) && !params.at(key).is_null();
}

double param_double(const json& params, const std::string& key, double fallback) {
  if (!has_param(params, key)) return fallback;
  const json& v = params.at(key);
  if (!v.is_number()) throw Error(ErrorCode::ConfigParse, "parameter '" + key + "' must be a number");
  return v.get<double>();
}

std::int64_t param_int(const json& params, const std::string& key, std::int64_t fallback) {
  if (!has_param(params, key)) return fallback;
  const json& v = params.at(key);
  if (!v.is_number_integer()) throw Error(ErrorCode::ConfigParse, "parameter '" + key + "' must be an integer");
  return v.get<std::int64_t>();
}

std::string param_string(const json& params, const std::string& key, const std::string& fallback) {
  if (!has_param(params, key)) return fallback;
  const json& v = params.at(key);
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_integer()) return std::to_string(v.get<std::int64_t>());
  throw Error(ErrorCode::ConfigParse, "parameter '" + key + "' must be a string");
}

}  // namespace orbitmc::experiments
