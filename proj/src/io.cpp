#include "orbitmc/io.hpp"

#include <json.hpp>

#include <charconv>
#include <fstream>
#include <sstream>

namespace orbitmc::io {

using nlohmann::json;

std::string format_double(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

namespace {

double parse_double(std::string_view token) {
  while (!token.empty() && (token.front() == ' ' || token.front() == '\t')) token.remove_prefix(1);
  while (!token.empty() && (token.back() == ' ' || token.back() == '\t' || token.back() == '\r')) {
    token.remove_suffix(1);
  }
  double v = 0.0;
  auto res = std::from_chars(token.data(), token.data() + token.size(), v);
  if (res.ec != std::errc() || res.ptr != token.data() + token.size()) {
    throw Error(ErrorCode::ConfigParse, "not a number: '" + std::string(token) + "'");
  }
  return v;
}

std::ifstream open(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::FileNotFound, path);
  return in;
}

}  // namespace

std::string read_text_file(const std::string& path) {
  std::ifstream in = open(path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Mat read_csv_matrix(std::istream& in) {
  std::vector<std::vector<double>> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::vector<double> row;
    std::string_view rest(line);
    while (true) {
      const auto comma = rest.find(',');
      row.push_back(parse_double(rest.substr(0, comma)));
      if (comma == std::string_view::npos) break;
      rest.remove_prefix(comma + 1);
    }
    if (!rows.empty() && row.size() != rows.front().size()) {
      throw Error(ErrorCode::ConfigParse, "ragged CSV row " + std::to_string(rows.size() + 1));
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw Error(ErrorCode::ConfigParse, "empty CSV");
  Mat m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(rows.front().size()));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < rows[i].size(); ++j) {
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j];
    }
  }
  return m;
}

Mat read_csv_matrix_file(const std::string& path) {
  std::ifstream in = open(path);
  return read_csv_matrix(in);
}

void write_csv_matrix(std::ostream& out, const Mat& m) {
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (j > 0) out << ',';
      out << format_double(m(i, j));
    }
    out << '\n';
  }
}

Distribution read_csv_distribution_file(const std::string& path) {
  const Mat m = read_csv_matrix_file(path);
  if (m.rows() != 1 && m.cols() != 1) {
    throw Error(ErrorCode::ConfigParse, "distribution CSV must be a single row or column");
  }
  return Distribution(std::vector<double>(m.data(), m.data() + m.size()));
}

KernelFile parse_kernel_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::ConfigParse, e.what());
  }
  if (!j.is_object() || !j.contains("pi")) {
    throw Error(ErrorCode::ConfigParse, "kernel JSON needs a \"pi\" array");
  }
  std::vector<double> pi;
  try {
    pi = j.at("pi").get<std::vector<double>>();
  } catch (const json::exception& e) {
    throw Error(ErrorCode::ConfigParse, e.what());
  }
  if (j.contains("n") && j.at("n").get<std::size_t>() != pi.size()) {
    throw Error(ErrorCode::DimensionMismatch, "\"n\" disagrees with the length of \"pi\"");
  }
  KernelFile out{Distribution(std::move(pi)), Mat()};
  if (j.contains("matrix")) {
    std::vector<std::vector<double>> rows;
    try {
      rows = j.at("matrix").get<std::vector<std::vector<double>>>();
    } catch (const json::exception& e) {
      throw Error(ErrorCode::ConfigParse, e.what());
    }
    const auto n = static_cast<Eigen::Index>(out.pi.size());
    if (static_cast<Eigen::Index>(rows.size()) != n) {
      throw Error(ErrorCode::DimensionMismatch, "matrix row count differs from n");
    }
    out.matrix.resize(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
      const auto& row = rows[static_cast<std::size_t>(i)];
      if (static_cast<Eigen::Index>(row.size()) != n) {
        throw Error(ErrorCode::DimensionMismatch, "matrix row " + std::to_string(i + 1) + " has wrong length");
      }
      for (Eigen::Index c = 0; c < n; ++c) out.matrix(i, c) = row[static_cast<std::size_t>(c)];
    }
  }
  return out;
}

KernelFile read_kernel_json_file(const std::string& path) { return parse_kernel_json(read_text_file(path)); }

std::string kernel_json(const Kernel& k) {
  json j;
  j["n"] = k.size();
  j["pi"] = k.pi().probs();
  json rows = json::array();
  for (Eigen::Index i = 0; i < k.matrix().rows(); ++i) {
    json row = json::array();
    for (Eigen::Index c = 0; c < k.matrix().cols(); ++c) row.push_back(k.matrix()(i, c));
    rows.push_back(std::move(row));
  }
  j["matrix"] = std::move(rows);
  return j.dump();
}

OrbitPartition parse_partition_json(const std::string& text, std::size_t n) {
  std::vector<std::vector<long long>> raw;
  try {
    raw = json::parse(text).get<std::vector<std::vector<long long>>>();
  } catch (const json::exception& e) {
    throw Error(ErrorCode::ConfigParse, e.what());
  }
  std::vector<std::vector<std::size_t>> orbits;
  orbits.reserve(raw.size());
  for (const auto& block : raw) {
    std::vector<std::size_t> orbit;
    for (long long s : block) {
      if (s < 1 || static_cast<std::size_t>(s) > n) {
        throw Error(ErrorCode::InvalidPartition, "state index " + std::to_string(s) + " outside 1.." + std::to_string(n));
      }
      orbit.push_back(static_cast<std::size_t>(s - 1));
    }
    orbits.push_back(std::move(orbit));
  }
  return OrbitPartition(n, std::move(orbits));
}

OrbitPartition read_partition_json_file(const std::string& path, std::size_t n) {
  return parse_partition_json(read_text_file(path), n);
}

std::string partition_json(const OrbitPartition& part) {
  json j = json::array();
  for (const auto& orbit : part.orbits()) {
    json block = json::array();
    for (std::size_t x : orbit) block.push_back(x + 1);
    j.push_back(std::move(block));
  }
  return j.dump();
}

}  // namespace orbitmc::io
