#include "orbitmc/experiments/report.hpp"

#include "orbitmc/io.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace orbitmc::experiments {

using nlohmann::json;

namespace {

json number(double v) {
  // JSON has no inf/nan; keep them readable instead of emitting null.
  if (std::isfinite(v)) return v;
  if (std::isnan(v)) return "nan";
  return v > 0 ? "inf" : "-inf";
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

const Check& ExperimentReport::check_close(std::string name, double value, double reference, double tol) {
  checks_.push_back({std::move(name), std::abs(value - reference) <= tol, value, reference, tol, "=="});
  return checks_.back();
}

const Check& ExperimentReport::check_le(std::string name, double value, double reference, double tol) {
  checks_.push_back({std::move(name), value <= reference + tol, value, reference, tol, "<="});
  return checks_.back();
}

const Check& ExperimentReport::check_ge(std::string name, double value, double reference, double tol) {
  checks_.push_back({std::move(name), value >= reference - tol, value, reference, tol, ">="});
  return checks_.back();
}

const Check& ExperimentReport::check_true(std::string name, bool ok) {
  checks_.push_back({std::move(name), ok, ok ? 1.0 : 0.0, 1.0, 0.0, "true"});
  return checks_.back();
}

void ExperimentReport::add_scalar(const std::string& name, double value) { scalars_.emplace_back(name, value); }

std::optional<double> ExperimentReport::scalar(const std::string& name) const {
  for (const auto& [k, v] : scalars_) {
    if (k == name) return v;
  }
  return std::nullopt;
}

bool ExperimentReport::all_pass() const {
  return std::all_of(checks_.begin(), checks_.end(), [](const Check& c) { return c.pass; });
}

std::string ExperimentReport::to_json() const {
  json j;
  j["schema_version"] = kSchemaVersion;
  j["config"] = config_;
  json scalars = json::object();
  for (const auto& [k, v] : scalars_) scalars[k] = number(v);
  j["scalars"] = std::move(scalars);
  json tables = json::array();
  for (const auto& t : tables_) {
    json rows = json::array();
    for (const auto& [label, values] : t.rows) {
      json vals = json::array();
      for (double v : values) vals.push_back(number(v));
      rows.push_back({{"label", label}, {"values", std::move(vals)}});
    }
    tables.push_back({{"name", t.name}, {"columns", t.columns}, {"rows", std::move(rows)}});
  }
  j["tables"] = std::move(tables);
  json checks = json::array();
  for (const auto& c : checks_) {
    checks.push_back({{"name", c.name},
                      {"pass", c.pass},
                      {"value", number(c.value)},
                      {"reference", number(c.reference)},
                      {"tolerance", number(c.tolerance)},
                      {"relation", c.relation}});
  }
  j["checks"] = std::move(checks);
  if (!notes_.empty()) j["notes"] = notes_;
  j["all_pass"] = all_pass();
  if (wall_time_) j["wall_time_seconds"] = *wall_time_;
  return j.dump(2) + "\n";
}

std::string ExperimentReport::to_csv() const {
  std::ostringstream out;
  out << "table,row,column,value\n";
  for (const auto& [k, v] : scalars_) out << "scalars," << csv_field(k) << ",value," << io::format_double(v) << '\n';
  for (const auto& t : tables_) {
    for (const auto& [label, values] : t.rows) {
      for (std::size_t c = 0; c < values.size(); ++c) {
        const std::string col = c < t.columns.size() ? t.columns[c] : std::to_string(c);
        out << csv_field(t.name) << ',' << csv_field(label) << ',' << csv_field(col) << ','
            << io::format_double(values[c]) << '\n';
      }
    }
  }
  for (const auto& c : checks_) {
    out << "checks," << csv_field(c.name) << ",value," << io::format_double(c.value) << '\n';
    out << "checks," << csv_field(c.name) << ",reference," << io::format_double(c.reference) << '\n';
    out << "checks," << csv_field(c.name) << ",pass," << (c.pass ? 1 : 0) << '\n';
  }
  return out.str();
}

}  // namespace orbitmc::experiments
