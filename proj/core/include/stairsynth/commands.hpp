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

#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "stairsynth/circuit.hpp"
#include "stairsynth/experiment.hpp"
#include "stairsynth/mps.hpp"
#include "stairsynth/optimizer.hpp"

namespace stairsynth {

struct TargetMetadata {
  TargetKind kind = TargetKind::kHeisenbergGs;
  std::size_t n_sites = 0;
  std::size_t chi = 0;  // largest bond of the stored state
  std::optional<double> energy;
  std::optional<std::size_t> sweeps_used;
  std::optional<bool> converged;
  std::vector<double> entropies;
  double mid_entropy = 0.0;  // across bond N/2
};

struct BuiltTarget {
  MatrixProductState state;
  TargetMetadata meta;
};

/// Builds the target state in memory. Ground states come from DMRG.
BuiltTarget build_target(const TargetSpec& spec);

std::string target_metadata_to_json(const TargetMetadata& meta);

struct BuildTargetOutput {
  std::filesystem::path mps_path;
  std::filesystem::path meta_path;
  TargetMetadata meta;
};

/// Writes <run>/target.mps.json and <run>/target.json. If DMRG stops without
/// meeting its tolerance the files are still written and NumericalError is thrown.
BuildTargetOutput cmd_build_target(const ExperimentConfig& config);

struct TrainOutput {
  std::filesystem::path run_dir;
  TrainResult result;
};

inline constexpr const char* kMetricsHeader = "epoch,n_layers,loss_F,avg_entropy,trunc_err,eta,wall_ms";

/// Runs grow_and_train and writes config.json, metrics.csv, entropy_profile.csv,
/// checkpoints/stage_<n>.json, circuit.json and summary.json into the run
/// directory. The target comes from `target_file`, else from an existing
/// <run>/target.mps.json, else it is built first. On a numerical abort the
/// partial outputs stay on disk and TrainingAborted propagates.
TrainOutput cmd_train(const ExperimentConfig& config, const std::optional<std::filesystem::path>& target_file = {});

struct EvalReport {
  std::size_t n_sites = 0;
  std::size_t n_layers = 0;
  std::size_t chi_target = 0;
  std::size_t chi_evolve = 0;
  double loss = 0.0;
  double overlap_modulus = 0.0;
  std::vector<double> entropies;
  double avg_entropy = 0.0;
  double max_entropy = 0.0;
  double entropy_bound = 0.0;  // n_layers ln 4
  bool entropy_bound_ok = false;
  double truncation_error = 0.0;
  std::uint64_t circuit_params = 0;
  std::uint64_t mps_params = 0;
  CompressionRatio ratio;
};

/// chi_evolve = 0 selects min(4^N_L, 2 chi_target).
EvalReport evaluate(const StairCircuit& circuit, const MatrixProductState& target, std::size_t chi_evolve = 0,
                    double cutoff = 1e-14);
EvalReport cmd_eval(const std::filesystem::path& checkpoint, const std::filesystem::path& target,
                    std::size_t chi_evolve = 0);
std::string eval_report_to_json(const EvalReport& report);

struct ReportOutput {
  std::filesystem::path report_dir;
  std::vector<std::filesystem::path> files;
  std::size_t runs = 0;
};

/// Aggregates one run directory, or every run directory below a root, into
/// <dir>/report/: f_vs_layers.csv, f_vs_entropy.csv and one
/// entropy_matrix_<run_id>.csv per run.
ReportOutput cmd_report(const std::filesystem::path& dir);

}  // namespace stairsynth
