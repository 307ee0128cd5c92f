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
#include <functional>
#include <string_view>
#include <vector>

#include "stairsynth/circuit.hpp"
#include "stairsynth/errors.hpp"
#include "stairsynth/mps.hpp"

namespace stairsynth {

/// Below this overlap modulus the loss is reported as undefined.
inline constexpr double kOverlapFloor = 1e-300;

/// max(0, -ln|overlap| / n_sites). Throws OrthogonalityError when |overlap| < kOverlapFloor.
double nlf_from_overlap(Complex overlap, std::size_t n_sites);

struct LossEvaluation {
  double loss = 0.0;
  Complex overlap;
  double truncation_error = 0.0;
  std::vector<std::size_t> kept;  // truncation decisions of the forward pass
};

/// F = -(1/N) ln |<target| U |psi0>| with U applied by truncated MPS evolution.
LossEvaluation negative_log_fidelity(const MatrixProductState& target, const StairCircuit& circuit,
                                     const MatrixProductState& psi0, std::size_t chi_evolve, double cutoff = 0.0);

/// Same loss with the forward pass forced to the recorded kept extents.
LossEvaluation negative_log_fidelity_replay(const MatrixProductState& target, const StairCircuit& circuit,
                                            const MatrixProductState& psi0, const std::vector<std::size_t>& kept);

struct LayerGradient {
  /// dF/dRe G + i dF/dIm G for every latent of the layer, in site order.
  std::vector<ComplexTensor> gradients;
  double loss = 0.0;
  Complex overlap;
};

inline constexpr double kDefaultBroadening = 1e-12;

/// Gradient of the loss with respect to the latents of `active_layer`, given
/// the state produced by the layers before it (`before`). The layers from
/// `active_layer` onward are contracted exactly against the target, site by
/// site; `before` is treated as a constant.
LayerGradient layer_gradient(const MatrixProductState& target, const StairCircuit& circuit,
                             const MatrixProductState& before, std::size_t active_layer,
                             double broadening = kDefaultBroadening);

/// Evolves psi0 through the layers before `active_layer` (truncated at
/// chi_evolve/cutoff) and returns layer_gradient on the result.
LayerGradient loss_gradient(const MatrixProductState& target, const StairCircuit& circuit,
                            const MatrixProductState& psi0, std::size_t active_layer, std::size_t chi_evolve,
                            double broadening = kDefaultBroadening, double cutoff = 0.0);

struct AdamState {
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
  std::uint64_t t = 0;
  std::vector<double> m;  // interleaved (Re, Im) per latent entry
  std::vector<double> v;
};

/// Fresh moments for `n_tensors` 4x4 latents.
AdamState make_adam_state(std::size_t n_tensors, double beta1 = 0.9, double beta2 = 0.999, double epsilon = 1e-8);

/// One bias-corrected Adam update treating Re and Im of every entry as
/// independent parameters. Moments are sized on first use.
void adam_step(AdamState& state, std::vector<ComplexTensor>& latents, const std::vector<ComplexTensor>& grads,
               double eta);

/// latents -= eta * grads.
void gradient_descent_step(std::vector<ComplexTensor>& latents, const std::vector<ComplexTensor>& grads, double eta);

enum class UpdateRule { kAdam, kGradientDescent };
std::string_view to_string(UpdateRule rule);
UpdateRule parse_update_rule(std::string_view name);

struct TrainConfig {
  double eta0 = 1e-2;
  std::size_t halvings_per_stage = 2;
  std::size_t epochs_per_stage = 1000;
  std::size_t convergence_window = 50;
  double convergence_tol = 1e-5;
  std::size_t chi_evolve = 0;  // 0 selects min(4^N_L, 2 chi_target)
  double cutoff = 1e-14;
  double svd_broadening = kDefaultBroadening;
  double epsilon_new_layer = kDefaultLayerEpsilon;
  std::uint64_t seed = 1;  // first layer uses seed, layer n (0-based) appends with seed + n
  UpdateRule rule = UpdateRule::kAdam;
  double adam_beta1 = 0.9;
  double adam_beta2 = 0.999;
  double adam_epsilon = 1e-8;
  std::size_t entropy_every = 10;
  bool record_wall_time = false;  // wall_ms is written as 0 otherwise

  bool operator==(const TrainConfig&) const = default;
};

/// Throws ArgumentError on an invalid configuration.
void validate(const TrainConfig& config);

/// eta0 * 0.5^floor(k * epoch_in_stage / epochs_per_stage).
double learning_rate(const TrainConfig& config, std::size_t epoch_in_stage);

/// min(4^n_layers, 2 chi_target), at least 4, unless the config fixes it.
std::size_t resolve_chi_evolve(const TrainConfig& config, std::size_t n_layers, std::size_t chi_target);

struct MetricsRecord {
  std::size_t epoch = 0;     // 1-based across all stages
  std::size_t n_layers = 0;  // active stage
  double loss = 0.0;
  double avg_entropy = 0.0;
  std::vector<double> entropies;  // S_1 .. S_{N-1}
  double truncation_error = 0.0;
  double eta = 0.0;
  double wall_ms = 0.0;
};

struct TrainObserver {
  std::function<void(const MetricsRecord&)> on_epoch;
  std::function<void(std::size_t n_layers, const StairCircuit&, const std::vector<MetricsRecord>&)> on_stage_end;
};

struct StageResult {
  StairCircuit circuit;
  std::vector<MetricsRecord> log;
  bool converged = false;
};

/// Raised when a numerical failure stops training; carries the partial log
/// and the last circuit that completed an epoch.
class TrainingAborted : public NumericalError {
 public:
  TrainingAborted(const std::string& what, StairCircuit circuit, std::vector<MetricsRecord> log)
      : NumericalError(what), circuit_(std::move(circuit)), log_(std::move(log)) {}
  const StairCircuit& circuit() const { return circuit_; }
  const std::vector<MetricsRecord>& log() const { return log_; }

 private:
  StairCircuit circuit_;
  std::vector<MetricsRecord> log_;
};

/// Trains every layer of `circuit` epoch by epoch. Each epoch visits the
/// layers in order and applies one update per layer. Stops when
/// |F_t - F_{t-w}| <= tol * F_t or after epochs_per_stage epochs.
StageResult train_stage(const MatrixProductState& target, const StairCircuit& circuit,
                        const MatrixProductState& psi0, const TrainConfig& config, std::size_t chi_evolve,
                        std::size_t first_epoch = 1, const TrainObserver& observer = {});

struct TrainResult {
  StairCircuit circuit;
  std::vector<MetricsRecord> log;
  std::vector<double> stage_losses;  // final F of each stage
  std::vector<bool> stage_converged;
};

/// Random first layer, then one identity-perturbed layer per stage up to n_layers.
TrainResult grow_and_train(const MatrixProductState& target, std::size_t n_layers, const TrainConfig& config,
                           const TrainObserver& observer = {});
TrainResult grow_and_train(const MatrixProductState& target, const MatrixProductState& psi0, std::size_t n_layers,
                           const TrainConfig& config, const TrainObserver& observer = {});

}  // namespace stairsynth
