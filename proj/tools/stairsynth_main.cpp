// Copyright 2026 The stairsynth Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Command-line runner: build-target, train, eval, report, batch.

#include <sys/wait.h>
#include <unistd.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "CLI11.hpp"
#include "stairsynth/commands.hpp"
#include "stairsynth/errors.hpp"
#include "stairsynth/experiment.hpp"

namespace {

namespace fs = std::filesystem;
using namespace stairsynth;

enum ExitCode : int { kOk = 0, kFailure = 1, kArgument = 2, kNumerical = 3, kCapacity = 4 };

// Flags that override fields of the config file (or of the defaults when no file is given).
struct Overrides {
  std::string config_path;
  std::optional<std::string> run_id, output_dir, kind, path, update_rule;
  std::optional<std::size_t> n_sites, chi, max_sweeps, n_layers, epochs_per_stage, chi_evolve, entropy_every;
  std::optional<std::uint64_t> target_seed, train_seed;
  std::optional<double> energy_tol, eta0, convergence_tol;
  bool wall_time = false;
};

void add_target_flags(CLI::App* app, Overrides& o) {
  app->add_option("-c,--config", o.config_path, "Experiment config (JSON)");
  app->add_option("--run-id", o.run_id, "Run name; outputs go to <output-dir>/<run-id>");
  app->add_option("--output-dir", o.output_dir, "Output root (default $STAIRSYNTH_OUTPUT_ROOT or ./runs)");
  app->add_option("--kind", o.kind, "heisenberg-gs | xy-gs | random-mps | mps-file | ghz");
  app->add_option("--n-sites", o.n_sites, "Number of qubits");
  app->add_option("--chi", o.chi, "Target bond dimension");
  app->add_option("--target-seed", o.target_seed, "Seed of the random MPS");
  app->add_option("--path", o.path, "MPS file for mps-file targets");
  app->add_option("--max-sweeps", o.max_sweeps, "DMRG sweep limit");
  app->add_option("--energy-tol", o.energy_tol, "DMRG energy tolerance per sweep");
}

void add_train_flags(CLI::App* app, Overrides& o) {
  app->add_option("--n-layers", o.n_layers, "Final number of circuit layers");
  app->add_option("--epochs-per-stage", o.epochs_per_stage, "Epoch limit per stage");
  app->add_option("--eta0", o.eta0, "Initial learning rate of each stage");
  app->add_option("--convergence-tol", o.convergence_tol, "Relative change of F that ends a stage");
  app->add_option("--chi-evolve", o.chi_evolve, "Bond cap of the evolved state (0: automatic)");
  app->add_option("--train-seed", o.train_seed, "Seed for latent-gate initialization");
  app->add_option("--update-rule", o.update_rule, "adam | gradient-descent");
  app->add_option("--entropy-every", o.entropy_every, "Epoch stride of entropy_profile.csv");
  app->add_flag("--wall-time", o.wall_time, "Record wall_ms (makes metrics.csv run-dependent)");
}

ExperimentConfig resolve(const Overrides& o) {
  ExperimentConfig c;
  if (!o.config_path.empty()) {
    c = load_experiment_config(o.config_path);
  } else if (!o.kind) {
    throw ArgumentError("either --config or --kind is required");
  }
  if (o.run_id) c.run_id = *o.run_id;
  if (o.output_dir) c.output_dir = *o.output_dir;
  if (o.kind) c.target.kind = parse_target_kind(*o.kind);
  if (o.n_sites) c.target.n_sites = *o.n_sites;
  if (o.chi) c.target.chi = *o.chi;
  if (o.target_seed) c.target.seed = *o.target_seed;
  if (o.path) c.target.path = *o.path;
  if (o.max_sweeps) c.target.dmrg.max_sweeps = *o.max_sweeps;
  if (o.energy_tol) c.target.dmrg.energy_tol = *o.energy_tol;
  TrainConfig& t = c.train.config;
  if (o.n_layers) c.train.n_layers = *o.n_layers;
  if (o.epochs_per_stage) t.epochs_per_stage = *o.epochs_per_stage;
  if (o.eta0) t.eta0 = *o.eta0;
  if (o.convergence_tol) t.convergence_tol = *o.convergence_tol;
  if (o.chi_evolve) t.chi_evolve = *o.chi_evolve;
  if (o.train_seed) t.seed = *o.train_seed;
  if (o.update_rule) t.rule = parse_update_rule(*o.update_rule);
  if (o.entropy_every) t.entropy_every = *o.entropy_every;
  if (o.wall_time) t.record_wall_time = true;
  validate(c);
  return c;
}

int run_batch(const std::vector<std::string>& configs, std::size_t jobs) {
  const std::string self = fs::read_symlink("/proc/self/exe").string();
  std::size_t next = 0, running = 0;
  int worst = kOk;
  while (next < configs.size() || running > 0) {
    while (running < jobs && next < configs.size()) {
      const pid_t pid = fork();
      if (pid < 0) throw std::runtime_error("fork failed");
      if (pid == 0) {
        const std::string& cfg = configs[next];
        execl(self.c_str(), self.c_str(), "train", "--config", cfg.c_str(), static_cast<char*>(nullptr));
        _exit(kFailure);
      }
      ++next;
      ++running;
    }
    int status = 0;
    if (wait(&status) > 0) {
      --running;
      const int code = WIFEXITED(status) ? WEXITSTATUS(status) : kFailure;
      if (code != kOk && (worst == kOk || code > worst)) worst = code;
    }
  }
  return worst;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Synthesize stair-like circuits that prepare a target matrix product state"};
  app.require_subcommand(1);

  Overrides build_opts, train_opts;
  auto* build = app.add_subcommand("build-target", "Build a target MPS and its metadata");
  add_target_flags(build, build_opts);

  std::string target_file;
  auto* train = app.add_subcommand("train", "Grow and train a circuit against a target");
  add_target_flags(train, train_opts);
  add_train_flags(train, train_opts);
  train->add_option("--target", target_file, "Use this MPS file as the target");

  std::string checkpoint, eval_target, eval_out;
  std::size_t eval_chi = 0;
  auto* eval = app.add_subcommand("eval", "Evaluate a checkpoint against a target");
  eval->add_option("--checkpoint", checkpoint, "Circuit checkpoint")->required();
  eval->add_option("--target", eval_target, "Target MPS file")->required();
  eval->add_option("--chi-evolve", eval_chi, "Bond cap of the evolved state (0: automatic)");
  eval->add_option("-o,--out", eval_out, "Write the report here instead of stdout");

  std::string report_dir;
  auto* report = app.add_subcommand("report", "Aggregate run directories into plot-ready tables");
  report->add_option("dir", report_dir, "A run directory or a root holding several")->required();

  std::vector<std::string> batch_configs;
  std::size_t jobs = 1;
  auto* batch = app.add_subcommand("batch", "Train several configs in parallel processes");
  batch->add_option("configs", batch_configs, "Experiment configs")->required();
  batch->add_option("-j,--jobs", jobs, "Concurrent processes")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kArgument;
  }

  try {
    if (*build) {
      const auto out = cmd_build_target(resolve(build_opts));
      fmt::print("wrote {} (mid-chain S = {:.6f}", out.mps_path.string(), out.meta.mid_entropy);
      if (out.meta.energy) fmt::print(", energy = {:.12f}", *out.meta.energy);
      fmt::print(")\n");
    } else if (*train) {
      std::optional<fs::path> target;
      if (!target_file.empty()) target = target_file;
      const auto out = cmd_train(resolve(train_opts), target);
      for (std::size_t s = 0; s < out.result.stage_losses.size(); ++s)
        fmt::print("stage {}: F = {:.10f}\n", s + 1, out.result.stage_losses[s]);
      fmt::print("outputs in {}\n", out.run_dir.string());
    } else if (*eval) {
      const std::string json = eval_report_to_json(cmd_eval(checkpoint, eval_target, eval_chi));
      if (eval_out.empty()) {
        std::cout << json;
      } else {
        std::ofstream(eval_out, std::ios::binary) << json;
      }
    } else if (*report) {
      const auto out = cmd_report(report_dir);
      fmt::print("aggregated {} run(s) into {}\n", out.runs, out.report_dir.string());
    } else if (*batch) {
      return run_batch(batch_configs, jobs);
    }
  } catch (const CapacityError& e) {
    fmt::print(stderr, "capacity error: {}\n", e.what());
    return kCapacity;
  } catch (const NumericalError& e) {
    fmt::print(stderr, "numerical error: {}\n", e.what());
    return kNumerical;
  } catch (const ArgumentError& e) {
    fmt::print(stderr, "error: {}\n", e.what());
    return kArgument;
  } catch (const std::exception& e) {
    fmt::print(stderr, "error: {}\n", e.what());
    return kFailure;
  }
  return kOk;
}
