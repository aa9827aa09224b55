#pragma once

#include <json.hpp>

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace orbitmc::experiments {

inline constexpr int kSchemaVersion = 1;

struct Check {
  std::string name;
  bool pass = false;
  double value = 0.0;
  double reference = 0.0;
  double tolerance = 0.0;
  std::string relation;  // "==", "<=", ">=", "true"
};

struct Table {
  std::string name;
  std::vector<std::string> columns;
  std::vector<std::pair<std::string, std::vector<double>>> rows;
};

class ExperimentReport {
 public:
  explicit ExperimentReport(nlohmann::json config) : config_(std::move(config)) {}

  /// |value - reference| <= tol.
  const Check& check_close(std::string name, double value, double reference, double tol);
  /// value <= reference + tol.
  const Check& check_le(std::string name, double value, double reference, double tol = 0.0);
  /// value >= reference - tol.
  const Check& check_ge(std::string name, double value, double reference, double tol = 0.0);
  const Check& check_true(std::string name, bool ok);

  void add_table(Table t) { tables_.push_back(std::move(t)); }
  void add_scalar(const std::string& name, double value);
  void add_note(const std::string& key, nlohmann::json value) { notes_[key] = std::move(value); }
  void set_wall_time(double seconds) { wall_time_ = seconds; }

  bool all_pass() const;
  const std::vector<Check>& checks() const { return checks_; }
  const std::vector<Table>& tables() const { return tables_; }
  std::optional<double> scalar(const std::string& name) const;

  std::string to_json() const;
  /// Long format: table,row,column,value. Checks go in table "checks".
  std::string to_csv() const;

 private:
  nlohmann::json config_;
  nlohmann::json notes_ = nlohmann::json::object();
  std::vector<Table> tables_;
  std::vector<std::pair<std::string, double>> scalars_;
  std::vector<Check> checks_;
  std::optional<double> wall_time_;
};

}  // namespace orbitmc::experiments
