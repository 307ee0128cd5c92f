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

#include "stairsynth/experiment.hpp"

#include <cstdlib>
#include <set>

#include <fmt/format.h>

#include "io_util.hpp"
#include "json_writer.hpp"
#include "stairsynth/errors.hpp"

namespace stairsynth {
namespace {

using Json = nlohmann::ordered_json;

// Reads the members of one JSON object and rejects any key it was not asked about.
class ObjectReader {
 public:
  ObjectReader(const Json& object, std::string where) : object_(object), where_(std::move(where)) {
    if (!object_.is_object()) throw ArgumentError(fmt::format("{} must be a JSON object", where_));
  }

  template <typename T>
  void read(const char* key, T& value) {
    seen_.insert(key);
    if (!object_.contains(key)) return;
    const Json& v = object_.at(key);
    try {
      if constexpr (std::is_same_v<T, bool>) {
        if (!v.is_boolean()) throw ArgumentError("expected true or false");
      } else if constexpr (std::is_integral_v<T>) {
        if (!v.is_number_integer() || (v.is_number_integer() && !v.is_number_unsigned() && v.get<std::int64_t>() < 0))
          throw ArgumentError("expected a non-negative integer");
      } else if constexpr (std::is_floating_point_v<T>) {
        if (!v.is_number()) throw ArgumentError("expected a number");
      } else {
        if (!v.is_string()) throw ArgumentError("expected a string");
      }
      value = v.get<T>();
    } catch (const ArgumentError& e) {
      throw ArgumentError(fmt::format("{}.{}: {}", where_, key, e.what()));
    }
  }

  template <typename T>
  void require(const char* key, T& value) {
    if (!object_.contains(key)) throw ArgumentError(fmt::format("{}.{} is required", where_, key));
    read(key, value);
  }

  const Json* child(const char* key) {
    seen_.insert(key);
    return object_.contains(key) ? &object_.at(key) : nullptr;
  }

  void finish() const {
    for (const auto& [key, value] : object_.items())
      if (!seen_.count(key)) throw ArgumentError(fmt::format("{}: unknown key '{}'", where_, key));
  }

 private:
  const Json& object_;
  std::string where_;
  std::set<std::string> seen_;
};

void read_dmrg(const Json& j, DmrgSpec& d) {
  ObjectReader r(j, "target.dmrg");
  r.read("max_sweeps", d.max_sweeps);
  r.read("energy_tol", d.energy_tol);
  r.read("cutoff", d.cutoff);
  r.read("lanczos_iterations", d.lanczos_iterations);
  r.read("lanczos_tol", d.lanczos_tol);
  r.read("seed", d.seed);
  r.finish();
}

void read_target(const Json& j, TargetSpec& t) {
  ObjectReader r(j, "target");
  std::string kind;
  r.require("kind", kind);
  try {
    t.kind = parse_target_kind(kind);
  } catch (const ArgumentError& e) {
    throw ArgumentError(fmt::format("target.kind: {}", e.what()));
  }
  r.read("n_sites", t.n_sites);
  r.read("chi", t.chi);
  r.read("seed", t.seed);
  r.read("path", t.path);
  if (const Json* d = r.child("dmrg")) read_dmrg(*d, t.dmrg);
  r.finish();
}

void read_train(const Json& j, TrainSpec& t) {
  ObjectReader r(j, "train");
  TrainConfig& c = t.config;
  r.read("n_layers", t.n_layers);
  r.read("eta0", c.eta0);
  r.read("halvings_per_stage", c.halvings_per_stage);
  r.read("epochs_per_stage", c.epochs_per_stage);
  r.read("convergence_window", c.convergence_window);
  r.read("convergence_tol", c.convergence_tol);
  r.read("chi_evolve", c.chi_evolve);
  r.read("cutoff", c.cutoff);
  r.read("svd_broadening", c.svd_broadening);
  r.read("epsilon_new_layer", c.epsilon_new_layer);
  r.read("seed", c.seed);
  std::string rule(to_string(c.rule));
  r.read("update_rule", rule);
  try {
    c.rule = parse_update_rule(rule);
  } catch (const ArgumentError& e) {
    throw ArgumentError(fmt::format("train.update_rule: {}", e.what()));
  }
  r.read("adam_beta1", c.adam_beta1);
  r.read("adam_beta2", c.adam_beta2);
  r.read("adam_epsilon", c.adam_epsilon);
  r.read("entropy_every", c.entropy_every);
  r.read("record_wall_time", c.record_wall_time);
  r.finish();
}

}  // namespace

std::string_view to_string(TargetKind kind) {
  switch (kind) {
    case TargetKind::kHeisenbergGs: return "heisenberg-gs";
    case TargetKind::kXyGs: return "xy-gs";
    case TargetKind::kRandomMps: return "random-mps";
    case TargetKind::kMpsFile: return "mps-file";
    case TargetKind::kGhz: return "ghz";
  }
  return "unknown";
}

TargetKind parse_target_kind(std::string_view name) {
  for (auto kind : {TargetKind::kHeisenbergGs, TargetKind::kXyGs, TargetKind::kRandomMps, TargetKind::kMpsFile,
                    TargetKind::kGhz})
    if (to_string(kind) == name) return kind;
  throw ArgumentError(fmt::format("unknown target kind '{}'", name));
}

ExperimentConfig parse_experiment_config(const std::string& text) {
  const Json doc = detail::parse_json(text, "experiment config");
  ExperimentConfig config;
  ObjectReader r(doc, "config");
  r.read("run_id", config.run_id);
  r.read("output_dir", config.output_dir);
  const Json* target = r.child("target");
  if (!target) throw ArgumentError("config.target is required");
  read_target(*target, config.target);
  if (const Json* train = r.child("train")) read_train(*train, config.train);
  r.finish();
  validate(config);
  return config;
}

ExperimentConfig load_experiment_config(const std::filesystem::path& path) {
  return parse_experiment_config(detail::read_text_file(path));
}

std::string serialize_experiment_config(const ExperimentConfig& config) {
  Json doc;
  doc["run_id"] = config.run_id;
  doc["output_dir"] = config.output_dir;
  const TargetSpec& t = config.target;
  Json& target = doc["target"];
  target["kind"] = to_string(t.kind);
  target["n_sites"] = t.n_sites;
  target["chi"] = t.chi;
  target["seed"] = t.seed;
  target["path"] = t.path;
  target["dmrg"] = {{"max_sweeps", t.dmrg.max_sweeps},
                    {"energy_tol", t.dmrg.energy_tol},
                    {"cutoff", t.dmrg.cutoff},
                    {"lanczos_iterations", t.dmrg.lanczos_iterations},
                    {"lanczos_tol", t.dmrg.lanczos_tol},
                    {"seed", t.dmrg.seed}};
  const TrainConfig& c = config.train.config;
  doc["train"] = {{"n_layers", config.train.n_layers},
                  {"eta0", c.eta0},
                  {"halvings_per_stage", c.halvings_per_stage},
                  {"epochs_per_stage", c.epochs_per_stage},
                  {"convergence_window", c.convergence_window},
                  {"convergence_tol", c.convergence_tol},
                  {"chi_evolve", c.chi_evolve},
                  {"cutoff", c.cutoff},
                  {"svd_broadening", c.svd_broadening},
                  {"epsilon_new_layer", c.epsilon_new_layer},
                  {"seed", c.seed},
                  {"update_rule", to_string(c.rule)},
                  {"adam_beta1", c.adam_beta1},
                  {"adam_beta2", c.adam_beta2},
                  {"adam_epsilon", c.adam_epsilon},
                  {"entropy_every", c.entropy_every},
                  {"record_wall_time", c.record_wall_time}};
  return detail::dump_json(doc, 2) + "\n";
}

void validate(const ExperimentConfig& config) {
  if (config.run_id.empty() || config.run_id.find_first_of("/\\") != std::string::npos || config.run_id == "." ||
      config.run_id == "..")
    throw ArgumentError("run_id must be a non-empty name without path separators");
  const TargetSpec& t = config.target;
  if (t.kind == TargetKind::kMpsFile) {
    if (t.path.empty()) throw ArgumentError("target.path is required for mps-file targets");
  } else {
    if (t.n_sites < 2) throw ArgumentError("target.n_sites must be at least 2");
  }
  if ((t.kind == TargetKind::kHeisenbergGs || t.kind == TargetKind::kXyGs || t.kind == TargetKind::kRandomMps) &&
      t.chi < 1)
    throw ArgumentError("target.chi must be at least 1");
  if (t.dmrg.max_sweeps < 1) throw ArgumentError("target.dmrg.max_sweeps must be at least 1");
  if (!(t.dmrg.energy_tol > 0.0)) throw ArgumentError("target.dmrg.energy_tol must be positive");
  if (!(t.dmrg.cutoff >= 0.0)) throw ArgumentError("target.dmrg.cutoff must be non-negative");
  if (t.dmrg.lanczos_iterations < 1) throw ArgumentError("target.dmrg.lanczos_iterations must be at least 1");
  if (!(t.dmrg.lanczos_tol > 0.0)) throw ArgumentError("target.dmrg.lanczos_tol must be positive");
  if (config.train.n_layers < 1) throw ArgumentError("train.n_layers must be at least 1");
  validate(config.train.config);
}

std::filesystem::path run_directory(const ExperimentConfig& config) {
  std::filesystem::path root = config.output_dir;
  if (root.empty()) {
    const char* env = std::getenv(kOutputRootVariable);
    root = (env && *env) ? std::filesystem::path(env) : std::filesystem::path("runs");
  }
  return root / config.run_id;
}

}  // namespace stairsynth
