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

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include "stairsynth/optimizer.hpp"

namespace stairsynth {

enum class TargetKind { kHeisenbergGs, kXyGs, kRandomMps, kMpsFile, kGhz };

std::string_view to_string(TargetKind kind);
/// "heisenberg-gs", "xy-gs", "random-mps", "mps-file" or "ghz".
TargetKind parse_target_kind(std::string_view name);

struct DmrgSpec {
  std::size_t max_sweeps = 20;
  double energy_tol = 1e-9;
  double cutoff = 1e-14;
  std::size_t lanczos_iterations = 100;
  double lanczos_tol = 1e-12;
  std::uint64_t seed = 1;

  bool operator==(const DmrgSpec&) const = default;
};

struct TargetSpec {
  TargetKind kind = TargetKind::kHeisenbergGs;
  std::size_t n_sites = 0;
  std::size_t chi = 0;    // ground states and random MPS
  std::uint64_t seed = 1; // random MPS
  std::string path;       // mps-file
  DmrgSpec dmrg;

  bool operator==(const TargetSpec&) const = default;
};

struct TrainSpec {
  std::size_t n_layers = 1;
  TrainConfig config;

  bool operator==(const TrainSpec&) const = default;
};

/// Everything needed to reproduce one run.
struct ExperimentConfig {
  std::string run_id = "run";
  std::string output_dir;  // empty: $STAIRSYNTH_OUTPUT_ROOT, else "runs"
  TargetSpec target;
  TrainSpec train;

  bool operator==(const ExperimentConfig&) const = default;
};

/// Strict JSON parsing: unknown keys, wrong types and invalid values raise ArgumentError.
ExperimentConfig parse_experiment_config(const std::string& text);
ExperimentConfig load_experiment_config(const std::filesystem::path& path);
std::string serialize_experiment_config(const ExperimentConfig& config);

/// Throws ArgumentError when the config cannot describe a run.
void validate(const ExperimentConfig& config);

inline constexpr const char* kOutputRootVariable = "STAIRSYNTH_OUTPUT_ROOT";

/// <output root>/<run_id>.
std::filesystem::path run_directory(const ExperimentConfig& config);

}  // namespace stairsynth
