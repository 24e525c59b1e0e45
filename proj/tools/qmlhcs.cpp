// Copyright 2026 The qmlhcs Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// qmlhcs: command-line harness for the drift-feedback experiment.
//
//   qmlhcs run --out runs/a [--config cfg.json] [--seed N] [--epochs T] ...
//   qmlhcs summarize runs/a [--window 11]
//   qmlhcs graph spec.json

#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "qmlhcs/qmlhcs.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitRuntime = 3;

bool is_config_error(qmlhcs::ErrorKind kind) {
  using qmlhcs::ErrorKind;
  switch (kind) {
    case ErrorKind::InvalidConfig:
    case ErrorKind::ParseError:
    case ErrorKind::UnknownName:
    case ErrorKind::UnknownOptimizer:
    case ErrorKind::MissingHyperparam:
    case ErrorKind::MissingRiskFunctional:
    case ErrorKind::DuplicateName:
      return true;
    default:
      return false;
  }
}

struct RunOptions {
  std::string config_path;
  std::string out_dir = "run";
  std::string run_id;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> epochs;
  std::optional<std::uint64_t> shots;
  std::optional<double> phi_max;
  std::optional<double> eps;
  std::optional<double> b_max;
  std::optional<std::string> backend;
};

qmlhcs::ExperimentConfig resolve(const RunOptions& opts) {
  qmlhcs::ExperimentConfig config;
  if (!opts.config_path.empty()) config = qmlhcs::load_config(opts.config_path);
  if (opts.seed) config.seed = *opts.seed;
  if (opts.epochs) {
    config.epochs = *opts.epochs;
    config.depth_schedule.horizon = *opts.epochs;
  }
  if (opts.shots) config.shots = *opts.shots;
  if (opts.phi_max) config.drift.phi_max = *opts.phi_max;
  if (opts.eps) config.drift.eps = *opts.eps;
  if (opts.b_max) config.drift.b_max = *opts.b_max;
  if (opts.backend) config.backend = qmlhcs::parse_experiment_backend(*opts.backend);
  config.validate();
  return config;
}

int cmd_run(const RunOptions& opts) {
  const auto config = resolve(opts);
  const std::string run_id = opts.run_id.empty() ? qmlhcs::default_run_id(config) : opts.run_id;
  const auto paths = qmlhcs::run_to_directory(config, opts.out_dir, run_id);
  std::cout << "wrote " << paths.epochs_csv.string() << ", " << paths.summary_csv.string() << ", "
            << paths.telemetry_jsonl.string() << ", " << paths.resolved_config.string() << '\n';
  return kExitOk;
}

int cmd_summarize(const std::string& dir, std::optional<std::size_t> window) {
  const auto rows = qmlhcs::summarize_directory(dir, window);
  std::cout << "wrote " << (std::filesystem::path(dir) / "summary.csv").string() << " (" << rows.size()
            << " rows)\n";
  return kExitOk;
}

int cmd_graph(const std::string& path) {
  const auto registry = qmlhcs::builtin_backends();
  const auto graph = qmlhcs::load_graph(path, registry);
  std::cout << qmlhcs::graph_output_to_json(qmlhcs::graph_forward(graph)).dump(2) << '\n';
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hypercausal drift-feedback experiment harness"};
  app.require_subcommand(1);

  RunOptions run_opts;
  auto* run = app.add_subcommand("run", "Run the drift experiment and write its outputs");
  run->add_option("--config", run_opts.config_path, "JSON experiment config")->check(CLI::ExistingFile);
  run->add_option("--out", run_opts.out_dir, "Output directory")->capture_default_str();
  run->add_option("--run-id", run_opts.run_id, "Run identifier used in the telemetry file name");
  run->add_option("--seed", run_opts.seed, "Seed (u64)");
  run->add_option("--epochs", run_opts.epochs, "Epoch count T");
  run->add_option("--shots", run_opts.shots, "Shots per evaluation");
  run->add_option("--phi-max", run_opts.phi_max, "Peak phase drift (rad)");
  run->add_option("--eps", run_opts.eps, "Per-epoch detuning slope");
  run->add_option("--b-max", run_opts.b_max, "Peak readout bias in [0,1]");
  run->add_option("--backend", run_opts.backend, "analytic | sampled | reference")
      ->check(CLI::IsMember({"analytic", "sampled", "reference"}));

  std::string summary_dir;
  std::optional<std::size_t> window;
  auto* summarize = app.add_subcommand("summarize", "Recompute summary.csv for a run directory");
  summarize->add_option("dir", summary_dir, "Run directory")->required()->check(CLI::ExistingDirectory);
  summarize->add_option("--window", window, "Drift proxy smoothing window");

  std::string graph_path;
  auto* graph = app.add_subcommand("graph", "Evaluate a GraphSpec JSON file and print per-node outputs");
  graph->add_option("spec", graph_path, "GraphSpec JSON")->required()->check(CLI::ExistingFile);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (*run) return cmd_run(run_opts);
    if (*summarize) return cmd_summarize(summary_dir, window);
    if (*graph) return cmd_graph(graph_path);
  } catch (const qmlhcs::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return is_config_error(e.kind()) ? kExitConfig : kExitRuntime;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
  return kExitRuntime;
}
