// orbitmc: command-line front end for the experiment runners.
//
// Exit codes: 0 all checks pass, 1 a check failed (report still written),
// 2 usage, configuration or input error.

#include "orbitmc/experiments/config.hpp"
#include "orbitmc/experiments/examples.hpp"
#include "orbitmc/experiments/runner.hpp"
#include "orbitmc/types.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <functional>
#include <memory>
#include <iostream>
#include <optional>

namespace {

using nlohmann::json;
using orbitmc::experiments::ExperimentConfig;

struct Globals {
  std::uint64_t seed = 0;
  std::string out;
  std::string format = "json";
  std::optional<double> tol;
  bool timing = false;
};

// Options that map straight into the params object when given.
struct Params {
  json j = json::object();
  std::vector<std::function<void()>> collect;

  template <class T>
  void option(CLI::App* app, const std::string& flag, const std::string& key, const std::string& help) {
    auto holder = std::make_shared<T>();
    CLI::Option* opt = app->add_option(flag, *holder, help);
    collect.push_back([this, key, holder, opt] {
      if (opt->count() > 0) j[key] = *holder;
    });
  }

  void finish() {
    for (auto& f : collect) f();
  }
};

void add_model_options(CLI::App* app, Params& p, bool with_partition = true) {
  p.option<std::string>(app, "--example", "example",
                        "Built-in model: three-state, four-state, five-state or lazy-walk-<n>");
  p.option<std::string>(app, "--kernel", "kernel_file", "JSON file with \"pi\" and \"matrix\"");
  p.option<std::string>(app, "--pi", "pi_csv", "CSV file with the target distribution");
  p.option<std::string>(app, "--matrix", "matrix_csv", "CSV file with the transition matrix");
  if (with_partition) p.option<std::string>(app, "--partition", "partition_file", "JSON file with 1-based orbits");
}

int write_report(const orbitmc::experiments::ExperimentReport& report, const ExperimentConfig& cfg) {
  const std::string text = cfg.format == "csv" ? report.to_csv() : report.to_json() + "\n";
  if (cfg.out.empty()) {
    std::cout << text;
  } else {
    std::ofstream f(cfg.out, std::ios::binary);
    if (!f) {
      std::cerr << "error: cannot write " << cfg.out << "\n";
      return 2;
    }
    f << text;
  }
  for (const auto& c : report.checks()) {
    if (!c.pass) std::cerr << "FAIL " << c.name << "\n";
  }
  return report.all_pass() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Orbit-kernel sandwich samplers: kernels, spectra, KL geometry, design and case studies"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--seed", g.seed, "Random seed (64-bit)");
  app.add_option("--out", g.out, "Write the report here instead of stdout");
  app.add_option("--format", g.format, "Report format")->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--tol", g.tol, "Override the check tolerance");
  app.add_flag("--timing", g.timing, "Record wall time in the report (breaks byte-identical output)");

  std::string kind;
  Params params;

  auto* kernel = app.add_subcommand("kernel", "Gibbs, Metropolis and Barker orbit kernels, sandwiches and mixtures");
  add_model_options(kernel, params);
  params.option<long long>(kernel, "--powers", "powers", "Largest t for the distance ||K^t - G||");

  auto* spectra = app.add_subcommand(
      "spectra", "Spectral comparison of P and its sandwiches, decomposition bounds and the theta constant");
  add_model_options(spectra, params);
  params.option<double>(spectra, "--eps", "eps", "Target accuracy for the approximation time");

  auto* kl = app.add_subcommand("kl", "KL divergence geometry: information projection, Pythagorean identity, "
                                      "data-processing gaps");
  add_model_options(kl, params);

  auto* design = app.add_subcommand("design", "Optimal orbit design: best k-block partition, star sampler, "
                                              "exact one-step samplers");
  add_model_options(design, params);
  params.option<long long>(design, "--k", "k", "Number of orbits");

  auto* altproj = app.add_subcommand("altproj", "Alternating Gibbs projections: cosines, limits and exact schedules");
  params.option<std::string>(altproj, "--mode", "mode", "grid, schedule, transpositions, vshape or random");
  params.option<long long>(altproj, "--n", "n", "Number of states");
  params.option<long long>(altproj, "--m", "m", "Grid blocks / V-shape blocks");
  params.option<long long>(altproj, "--k", "k", "Grid block length / V-shape half width");
  params.option<long long>(altproj, "--d", "d", "Schedule exponent (n = 2^d)");
  params.option<double>(altproj, "--beta", "beta", "V-shape inverse temperature");
  params.option<long long>(altproj, "--k1", "k1", "Orbits in the first random partition");
  params.option<long long>(altproj, "--k2", "k2", "Orbits in the second random partition");
  params.option<long long>(altproj, "--powers", "powers", "Largest t for the convergence table");
  params.option<long long>(altproj, "--pi-seed", "pi_seed", "Random target for transpositions (default uniform)");

  auto* cw = app.add_subcommand("curie-weiss", "Curie-Weiss case study: star-lifted sampler versus Glauber dynamics");
  params.option<long long>(cw, "--d", "d", "Number of spins (even)");
  params.option<double>(cw, "--beta", "beta", "Inverse temperature");
  std::string kcut;
  cw->add_option("--kcut", kcut, "Tail cut index or 'auto'");
  params.option<double>(cw, "--eps", "eps", "Total-variation threshold");
  params.option<long long>(cw, "--samples", "samples", "Streaming samples per chi-square row (0 skips)");
  params.option<long long>(cw, "--trials", "trials", "Independent streams the samples are split over");

  auto* tune = app.add_subcommand("tune", "Learning an orbit structure from sampler trajectories");
  tune->require_subcommand(1);
  tune->fallthrough();
  for (const char* mode : {"adaptive", "explore"}) {
    auto* sub = tune->add_subcommand(mode, std::string(mode) == "adaptive"
                                               ? "Adaptive tuning: merge the k lowest-energy visited states"
                                               : "Exploratory chain at high temperature, frozen for the target");
    params.option<std::string>(sub, "--model", "kernel_file", "JSON kernel file");
    params.option<std::string>(sub, "--example", "example", "Built-in model");
    params.option<long long>(sub, "--d", "d", "Curie-Weiss spins (Glauber base chain)");
    params.option<double>(sub, "--beta", "beta", "Curie-Weiss inverse temperature");
    params.option<long long>(sub, "--k", "k", "Merged orbit size");
    params.option<long long>(sub, "--block", "block", "Steps per adaptation block");
    params.option<long long>(sub, "--steps", "steps", "Total steps");
    params.option<double>(sub, "--beta-explore", "beta_explore", "Exploration inverse temperature");
    params.option<double>(sub, "--beta-target", "beta_target", "Target inverse temperature");
    params.option<std::string>(sub, "--grouping", "grouping", "energy or empirical");
    params.option<long long>(sub, "--initial-state", "initial_state", "Starting state");
  }

  auto* golden = app.add_subcommand("golden", "Regression suite over the published worked values");
  bool corrupt = false;
  golden->add_flag("--corrupt-gpg", corrupt, "Sensitivity check: break the G P G normalisation");

  auto* run = app.add_subcommand("run", "Run a JSON experiment config");
  std::string config_path;
  run->add_option("--config", config_path, "Config file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    ExperimentConfig cfg;
    if (run->parsed()) {
      cfg = orbitmc::experiments::load_config(config_path);
      if (app.count("--seed")) cfg.seed = g.seed;
      if (app.count("--tol")) cfg.tol = g.tol;
      if (app.count("--out")) cfg.out = g.out;
      if (app.count("--format")) cfg.format = g.format;
      if (g.timing) cfg.timing = true;
    } else {
      for (auto* sub : app.get_subcommands()) kind = sub->get_name();
      cfg.kind = kind;
      cfg.seed = g.seed;
      cfg.tol = g.tol;
      cfg.out = g.out;
      cfg.format = g.format;
      cfg.timing = g.timing;
      params.finish();
      if (tune->parsed()) {
        for (auto* sub : tune->get_subcommands()) params.j["mode"] = sub->get_name();
      }
      cfg.params = params.j;
      if (!kcut.empty()) {
        cfg.params["kcut"] = kcut == "auto" ? json("auto") : json(std::stoll(kcut));
      }
      if (corrupt) cfg.params["corrupt_gpg"] = true;
    }
    return write_report(orbitmc::experiments::run(cfg), cfg);
  } catch (const orbitmc::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
