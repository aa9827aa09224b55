#include "orbitmc/experiments/config.hpp"
#include "orbitmc/experiments/golden.hpp"
#include "orbitmc/experiments/report.hpp"
#include "orbitmc/experiments/runner.hpp"
#include "orbitmc/io.hpp"
#include "orbitmc/orbit_kernels.hpp"

#include "../support/instances.hpp"

#include <doctest.h>

#include <sstream>

using namespace orbitmc;
using inst::expect_error;
using inst::max_abs;

TEST_CASE("number formatting round-trips") {
  for (double v : {0.0, 1.0, -2.5, 0.1, 1.0 / 3.0, 1e-300, 6.02214076e23}) {
    const std::string s = io::format_double(v);
    CHECK(std::stod(s) == v);
    CHECK(s.find(',') == std::string::npos);
  }
  CHECK(io::format_double(0.1) == "0.1");
}

TEST_CASE("CSV matrices") {
  Mat m(2, 3);
  m << 0.1, 0.2, 0.7, 1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0;
  std::ostringstream out;
  io::write_csv_matrix(out, m);
  std::istringstream in(out.str());
  CHECK(max_abs(io::read_csv_matrix(in), m) == 0.0);

  std::istringstream spaced(" 1, 2\n3 ,4\n\n");
  const Mat s = io::read_csv_matrix(spaced);
  CHECK(s.rows() == 2);
  CHECK(s(1, 0) == 3.0);

  std::istringstream ragged("1,2\n3\n");
  expect_error(ErrorCode::ConfigParse, [&] { io::read_csv_matrix(ragged); });
  std::istringstream junk("1,x\n");
  expect_error(ErrorCode::ConfigParse, [&] { io::read_csv_matrix(junk); });
  std::istringstream empty("");
  expect_error(ErrorCode::ConfigParse, [&] { io::read_csv_matrix(empty); });
  expect_error(ErrorCode::FileNotFound, [] { io::read_csv_matrix_file("/nonexistent/p.csv"); });
}

TEST_CASE("kernel and partition JSON") {
  const Distribution pi({0.3, 0.3, 0.4});
  Mat p(3, 3);
  p << 0.0, 0.4, 0.6, 0.4, 0.0, 0.6, 0.45, 0.45, 0.1;
  const Kernel k = validate_kernel(p, pi);
  const io::KernelFile back = io::parse_kernel_json(io::kernel_json(k));
  CHECK(back.pi.approx_equal(pi, 0.0));
  CHECK(max_abs(back.matrix, p) == 0.0);

  const io::KernelFile pi_only = io::parse_kernel_json(R"({"pi": [0.5, 0.5]})");
  CHECK(pi_only.pi.size() == 2);
  CHECK(pi_only.matrix.size() == 0);
  expect_error(ErrorCode::ConfigParse, [] { io::parse_kernel_json("{"); });
  expect_error(ErrorCode::ConfigParse, [] { io::parse_kernel_json(R"({"matrix": [[1]]})"); });
  expect_error(ErrorCode::DimensionMismatch, [] { io::parse_kernel_json(R"({"n": 3, "pi": [0.5, 0.5]})"); });
  expect_error(ErrorCode::DimensionMismatch,
               [] { io::parse_kernel_json(R"({"pi": [0.5, 0.5], "matrix": [[1, 0], [0]]})"); });

  const OrbitPartition part(5, {{0, 3}, {1}, {2, 4}});
  const std::string js = io::partition_json(part);
  CHECK(io::parse_partition_json(js, 5) == part);
  CHECK(io::parse_partition_json("[[1,2],[3]]", 3) == OrbitPartition(3, {{0, 1}, {2}}));
  expect_error(ErrorCode::InvalidPartition, [] { io::parse_partition_json("[[1,2],[4]]", 3); });
  expect_error(ErrorCode::InvalidPartition, [] { io::parse_partition_json("[[1,2],[2,3]]", 3); });
  expect_error(ErrorCode::InvalidPartition, [] { io::parse_partition_json("[[1,2]]", 3); });
  expect_error(ErrorCode::ConfigParse, [] { io::parse_partition_json("[[1,\"a\"]]", 2); });
}

TEST_CASE("config parsing") {
  using namespace experiments;
  const ExperimentConfig c = parse_config(R"({"kind": "curie-weiss", "seed": 42, "params": {"d": 4, "beta": 2.0}})");
  CHECK(c.kind == "curie-weiss");
  CHECK(c.seed == 42);
  CHECK(param_int(c.params, "d", 0) == 4);
  CHECK(param_double(c.params, "beta", 0.0) == 2.0);
  CHECK(param_double(c.params, "eps", 0.25) == 0.25);
  CHECK(param_string(c.params, "kcut", "auto") == "auto");
  CHECK(c.echo()["seed"] == 42);

  expect_error(ErrorCode::ConfigParse, [] { parse_config("{not json"); });
  expect_error(ErrorCode::ConfigParse, [] { parse_config("[1, 2]"); });
  expect_error(ErrorCode::ConfigParse, [] { parse_config(R"({"kind": "nope"})"); });
  expect_error(ErrorCode::ConfigParse, [] { parse_config(R"({"kind": "kernel", "params": 3})"); });
  expect_error(ErrorCode::ConfigParse, [] { parse_config(R"({"kind": "kernel", "format": "xml"})"); });
  expect_error(ErrorCode::ConfigParse, [&] { param_int(c.params, "beta", 0); });
  expect_error(ErrorCode::ConfigParse, [&] { param_string(c.params, "beta", ""); });
  CHECK(param_string(c.params, "d", "") == "4");
  expect_error(ErrorCode::FileNotFound, [] { load_config("/nonexistent/config.json"); });
  CHECK(is_known_kind("golden"));
  CHECK_FALSE(is_known_kind("Golden"));
}

TEST_CASE("reports") {
  experiments::ExperimentReport r(nlohmann::json{{"seed", 1}});
  CHECK(r.check_close("a", 1.0, 1.0 + 1e-13, 1e-12).pass);
  CHECK_FALSE(r.check_le("b", 2.0, 1.0).pass);
  CHECK(r.check_ge("c", 2.0, 1.0).pass);
  r.add_scalar("s", 0.5);
  CHECK(r.scalar("s") == 0.5);
  CHECK_FALSE(r.scalar("missing").has_value());
  CHECK_FALSE(r.all_pass());

  const auto j = nlohmann::json::parse(r.to_json());
  CHECK(j["checks"].size() == 3);
  CHECK_FALSE(j.contains("wall_time_seconds"));
  const std::string csv = r.to_csv();
  CHECK(csv.rfind("table,row,column,value", 0) == 0);
}

TEST_CASE("experiment runs are deterministic") {
  using namespace experiments;
  const std::vector<std::string> configs = {
      R"({"kind": "kernel", "params": {"example": "four-state"}})",
      R"({"kind": "spectra", "params": {"example": "three-state"}})",
      R"({"kind": "kl", "params": {"example": "four-state"}})",
      R"({"kind": "design", "params": {"example": "five-state"}})",
      R"({"kind": "altproj", "seed": 3, "params": {"mode": "random", "n": 9}})",
      R"({"kind": "curie-weiss", "seed": 4, "params": {"d": 4, "beta": 2.0, "samples": 20000, "trials": 4}})",
      R"({"kind": "tune", "seed": 5, "params": {"mode": "adaptive", "d": 4, "beta": 2.0, "k": 2, "steps": 1000}})",
  };
  for (const auto& text : configs) {
    CAPTURE(text);
    const ExperimentConfig c = parse_config(text);
    const std::string a = run(c).to_json();
    const std::string b = run(c).to_json();
    CHECK(a == b);
    CHECK(run(c).to_csv() == run(c).to_csv());
  }
  // A different seed changes the sampled part of the report.
  const auto s1 = run(parse_config(R"({"kind": "altproj", "seed": 1, "params": {"mode": "random", "n": 9}})"));
  const auto s2 = run(parse_config(R"({"kind": "altproj", "seed": 2, "params": {"mode": "random", "n": 9}})"));
  CHECK(s1.to_json() != s2.to_json());
}

TEST_CASE("golden suite") {
  using namespace experiments;
  const ExperimentReport ok = golden_suite({}, nlohmann::json::object());
  for (const auto& c : ok.checks()) {
    CAPTURE(c.name);
    CHECK(c.pass);
  }
  GoldenOptions corrupt;
  corrupt.corrupt_gpg = true;
  const ExperimentReport bad = golden_suite(corrupt, nlohmann::json::object());
  CHECK_FALSE(bad.all_pass());
}
