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

#include "stairsynth/optimizer.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>

#include <fmt/format.h>

#include "network.hpp"
#include "stairsynth/random.hpp"

namespace stairsynth {
namespace {

using detail::Label;
using detail::LabeledTensor;
using detail::contract_shared;

// Leg labels of the network <target| U_last ... U_active |before>.
class LadderLabels {
 public:
  LadderLabels(std::size_t n_sites, std::size_t n_active) : n_(n_sites), m_(n_active) {}

  Label phi_bond(std::size_t n) const { return label(0, n); }
  Label target_bond(std::size_t n) const { return label(1, n); }
  // Qubit q between layer j - 1 and layer j (j = 0 is the input state).
  Label wire(std::size_t j, std::size_t q) const { return label(2 + j, q); }
  // Qubit q inside layer j, between the gates on (q-1, q) and (q, q+1).
  Label mid(std::size_t j, std::size_t q) const { return label(3 + m_ + j, q); }

  std::vector<Label> gate(std::size_t j, std::size_t n) const {
    return {wire(j + 1, n), n + 2 == n_ ? wire(j + 1, n + 1) : mid(j, n + 1), n == 0 ? wire(j, 0) : mid(j, n),
            wire(j, n + 1)};
  }

 private:
  Label label(std::size_t kind, std::size_t index) const {
    return static_cast<Label>(kind * (n_ + 1) + index);
  }
  std::size_t n_;
  std::size_t m_;
};

LabeledTensor boundary(Label a, Label b) { return {ComplexTensor(Shape{1, 1}, {Complex{1.0, 0.0}}), {a, b}}; }

double smallest_pair_gap(const std::vector<double>& s) {
  double gap = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < s.size(); ++i)
    for (std::size_t j = i + 1; j < s.size(); ++j) gap = std::min(gap, std::abs(s[i] - s[j]));
  return gap;
}

StairCircuit with_full_rank_layer(const StairCircuit& circuit, std::size_t layer, std::vector<ComplexTensor> latents,
                                  std::uint64_t seed, std::size_t epoch) {
  constexpr int kAttempts = 5;
  for (int attempt = 0;; ++attempt) {
    try {
      return circuit.with_layer(layer, latents);
    } catch (const DegenerateProjectionError&) {
      if (attempt + 1 == kAttempts) throw;
    }
    ComplexNormalSampler sample(seed ^ (epoch * 0x100000001b3ULL), layer * kAttempts + attempt);
    for (auto& g : latents) {
      const double scale = 1e-8 * std::max(g.norm(), 1.0);
      for (auto& z : g.data()) z += scale * sample();
    }
  }
}

}  // namespace

double nlf_from_overlap(Complex overlap, std::size_t n_sites) {
  const double modulus = std::abs(overlap);
  if (!(modulus >= kOverlapFloor))
    throw OrthogonalityError(fmt::format("overlap modulus {:.3e} is below the floor; the loss is undefined", modulus));
  return std::max(0.0, -std::log(modulus) / static_cast<double>(n_sites));
}

LossEvaluation negative_log_fidelity(const MatrixProductState& target, const StairCircuit& circuit,
                                     const MatrixProductState& psi0, std::size_t chi_evolve, double cutoff) {
  if (target.n_sites() != circuit.n_sites()) throw ArgumentError("target and circuit sizes differ");
  auto app = apply_circuit_mps(circuit, psi0, chi_evolve, cutoff);
  const Complex o = overlap(target, app.state);
  return {nlf_from_overlap(o, target.n_sites()), o, app.truncation_error, std::move(app.kept)};
}

LossEvaluation negative_log_fidelity_replay(const MatrixProductState& target, const StairCircuit& circuit,
                                            const MatrixProductState& psi0, const std::vector<std::size_t>& kept) {
  if (target.n_sites() != circuit.n_sites()) throw ArgumentError("target and circuit sizes differ");
  auto app = apply_circuit_mps_replay(circuit, psi0, kept);
  const Complex o = overlap(target, app.state);
  return {nlf_from_overlap(o, target.n_sites()), o, app.truncation_error, std::move(app.kept)};
}

LayerGradient layer_gradient(const MatrixProductState& target, const StairCircuit& circuit,
                             const MatrixProductState& before, std::size_t active_layer, double broadening) {
  const std::size_t n = circuit.n_sites();
  if (target.n_sites() != n || before.n_sites() != n)
    throw ArgumentError("target, state and circuit sizes differ");
  if (active_layer >= circuit.n_layers())
    throw ArgumentError(fmt::format("active layer {} out of range for {} layers", active_layer, circuit.n_layers()));
  const std::size_t m = circuit.n_layers() - active_layer;
  const LadderLabels lab(n, m);

  const auto phi = [&](std::size_t s) {
    return LabeledTensor{before.tensor(s), {lab.phi_bond(s), lab.wire(0, s), lab.phi_bond(s + 1)}};
  };
  const auto tgt = [&](std::size_t s) {
    return LabeledTensor{target.tensor(s).conj(), {lab.target_bond(s), lab.wire(m, s), lab.target_bond(s + 1)}};
  };
  const auto gate = [&](std::size_t j, std::size_t s) {
    return LabeledTensor{circuit.unitary(active_layer + j, s).reshaped({2, 2, 2, 2}), lab.gate(j, s)};
  };

  std::vector<LabeledTensor> right(n + 1);
  right[n] = boundary(lab.phi_bond(n), lab.target_bond(n));
  for (std::size_t s = n - 1; s >= 1; --s) {
    LabeledTensor env = contract_shared(tgt(s), right[s + 1]);
    if (s + 1 < n)
      for (std::size_t j = m; j-- > 0;) env = contract_shared(gate(j, s), env);
    right[s] = contract_shared(phi(s), env);
  }

  LayerGradient out;
  std::vector<ComplexTensor> envs;
  LabeledTensor left = boundary(lab.phi_bond(0), lab.target_bond(0));
  for (std::size_t s = 0; s < n; ++s) {
    if (s + 1 < n) {
      LabeledTensor env = contract_shared(left, phi(s));
      for (std::size_t j = 1; j < m; ++j) env = contract_shared(env, gate(j, s));
      env = contract_shared(env, tgt(s));
      env = contract_shared(env, right[s + 1]);
      const auto legs = lab.gate(0, s);
      envs.push_back(detail::arrange(env, legs).reshaped({4, 4}));
    }
    left = contract_shared(left, phi(s));
    if (s + 1 < n)
      for (std::size_t j = 0; j < m; ++j) left = contract_shared(left, gate(j, s));
    left = contract_shared(left, tgt(s));
  }
  out.overlap = left.tensor[0];
  out.loss = nlf_from_overlap(out.overlap, n);

  // F = -(1/N) ln|O| with O = sum_ab E_ab W_ab gives dF/dRe W + i dF/dIm W = -conj(E / O) / N.
  const Complex scale = -1.0 / (static_cast<double>(n) * std::conj(out.overlap));
  for (std::size_t s = 0; s + 1 < n; ++s) {
    const ComplexTensor grad_w = envs[s].conj() * scale;
    const auto& factors = circuit.polar(active_layer, s);
    ComplexTensor g = project_to_unitary_vjp(factors, grad_w, broadening);
    if (!g.all_finite())
      throw NumericalError(fmt::format("non-finite gradient at layer {}, site {} (smallest singular-value gap {:.3e})",
                                       active_layer, s, smallest_pair_gap(factors.s)));
    out.gradients.push_back(std::move(g));
  }
  return out;
}

LayerGradient loss_gradient(const MatrixProductState& target, const StairCircuit& circuit,
                            const MatrixProductState& psi0, std::size_t active_layer, std::size_t chi_evolve,
                            double broadening, double cutoff) {
  if (active_layer >= circuit.n_layers()) throw ArgumentError("active layer out of range");
  auto before = apply_layers_mps(circuit, psi0, 0, active_layer, chi_evolve, cutoff);
  return layer_gradient(target, circuit, before.state, active_layer, broadening);
}

AdamState make_adam_state(std::size_t n_tensors, double beta1, double beta2, double epsilon) {
  AdamState s;
  s.beta1 = beta1;
  s.beta2 = beta2;
  s.epsilon = epsilon;
  s.m.assign(n_tensors * 32, 0.0);
  s.v.assign(n_tensors * 32, 0.0);
  return s;
}

void adam_step(AdamState& state, std::vector<ComplexTensor>& latents, const std::vector<ComplexTensor>& grads,
               double eta) {
  if (latents.size() != grads.size()) throw DimensionError("latent and gradient counts differ");
  std::size_t total = 0;
  for (std::size_t k = 0; k < latents.size(); ++k) {
    if (latents[k].shape() != grads[k].shape()) throw DimensionError("latent and gradient shapes differ");
    total += 2 * latents[k].size();
  }
  if (state.m.empty() && state.v.empty()) {
    state.m.assign(total, 0.0);
    state.v.assign(total, 0.0);
  }
  if (state.m.size() != total || state.v.size() != total) throw DimensionError("Adam moments do not match the latents");

  ++state.t;
  const double c1 = 1.0 - std::pow(state.beta1, static_cast<double>(state.t));
  const double c2 = 1.0 - std::pow(state.beta2, static_cast<double>(state.t));
  const auto update = [&](std::size_t idx, double g) {
    state.m[idx] = state.beta1 * state.m[idx] + (1.0 - state.beta1) * g;
    state.v[idx] = state.beta2 * state.v[idx] + (1.0 - state.beta2) * g * g;
    return eta * (state.m[idx] / c1) / (std::sqrt(state.v[idx] / c2) + state.epsilon);
  };
  std::size_t idx = 0;
  for (std::size_t k = 0; k < latents.size(); ++k) {
    for (std::size_t i = 0; i < latents[k].size(); ++i, idx += 2) {
      const Complex g = grads[k][i];
      const double d_re = update(idx, g.real());
      const double d_im = update(idx + 1, g.imag());
      latents[k][i] -= Complex{d_re, d_im};
    }
  }
}

void gradient_descent_step(std::vector<ComplexTensor>& latents, const std::vector<ComplexTensor>& grads, double eta) {
  if (latents.size() != grads.size()) throw DimensionError("latent and gradient counts differ");
  for (std::size_t k = 0; k < latents.size(); ++k) {
    if (latents[k].shape() != grads[k].shape()) throw DimensionError("latent and gradient shapes differ");
    for (std::size_t i = 0; i < latents[k].size(); ++i) latents[k][i] -= eta * grads[k][i];
  }
}

std::string_view to_string(UpdateRule rule) { return rule == UpdateRule::kAdam ? "adam" : "gradient-descent"; }

UpdateRule parse_update_rule(std::string_view name) {
  if (name == "adam") return UpdateRule::kAdam;
  if (name == "gradient-descent") return UpdateRule::kGradientDescent;
  throw ArgumentError(fmt::format("unknown update rule '{}'", name));
}

void validate(const TrainConfig& c) {
  const auto require = [](bool ok, const char* what) {
    if (!ok) throw ArgumentError(fmt::format("invalid training config: {}", what));
  };
  require(c.eta0 > 0.0 && std::isfinite(c.eta0), "eta0 must be positive");
  require(c.epochs_per_stage >= 1, "epochs_per_stage must be at least 1");
  require(c.convergence_window >= 1, "convergence_window must be at least 1");
  require(c.convergence_tol > 0.0, "convergence_tol must be positive");
  require(c.chi_evolve == 0 || c.chi_evolve >= 4, "chi_evolve must be 0 (automatic) or at least 4");
  require(c.cutoff >= 0.0, "cutoff must be non-negative");
  require(c.svd_broadening > 0.0, "svd_broadening must be positive");
  require(c.epsilon_new_layer > 0.0, "epsilon_new_layer must be positive");
  require(c.adam_beta1 >= 0.0 && c.adam_beta1 < 1.0, "adam_beta1 must lie in [0, 1)");
  require(c.adam_beta2 >= 0.0 && c.adam_beta2 < 1.0, "adam_beta2 must lie in [0, 1)");
  require(c.adam_epsilon > 0.0, "adam_epsilon must be positive");
  require(c.entropy_every >= 1, "entropy_every must be at least 1");
}

double learning_rate(const TrainConfig& config, std::size_t epoch_in_stage) {
  const std::size_t halvings = config.halvings_per_stage * epoch_in_stage / config.epochs_per_stage;
  return config.eta0 * std::pow(0.5, static_cast<double>(halvings));
}

std::size_t resolve_chi_evolve(const TrainConfig& config, std::size_t n_layers, std::size_t chi_target) {
  if (config.chi_evolve > 0) return config.chi_evolve;
  std::size_t reach = 1;
  for (std::size_t l = 0; l < n_layers && reach < (std::size_t{1} << 40); ++l) reach *= 4;
  return std::max<std::size_t>(4, std::min(reach, 2 * chi_target));
}

StageResult train_stage(const MatrixProductState& target, const StairCircuit& circuit,
                        const MatrixProductState& psi0, const TrainConfig& config, std::size_t chi_evolve,
                        std::size_t first_epoch, const TrainObserver& observer) {
  validate(config);
  const std::size_t n = circuit.n_sites();
  if (target.n_sites() != n || psi0.n_sites() != n) throw ArgumentError("target, state and circuit sizes differ");
  const std::size_t n_layers = circuit.n_layers();
  if (n_layers == 0) throw ArgumentError("cannot train a circuit without layers");

  StairCircuit current = circuit;
  std::vector<AdamState> moments(
      n_layers, make_adam_state(n - 1, config.adam_beta1, config.adam_beta2, config.adam_epsilon));
  std::vector<MetricsRecord> log;
  bool converged = false;

  for (std::size_t e = 0; e < config.epochs_per_stage; ++e) {
    const auto start = std::chrono::steady_clock::now();
    const std::size_t epoch = first_epoch + e;
    const double eta = learning_rate(config, e);
    const StairCircuit last_good = current;
    MetricsRecord rec;
    try {
      MatrixProductState state = psi0;
      double trunc = 0.0;
      for (std::size_t l = 0; l < n_layers; ++l) {
        const LayerGradient grad = layer_gradient(target, current, state, l, config.svd_broadening);
        std::vector<ComplexTensor> latents = current.layer_latents(l);
        if (config.rule == UpdateRule::kAdam)
          adam_step(moments[l], latents, grad.gradients, eta);
        else
          gradient_descent_step(latents, grad.gradients, eta);
        current = with_full_rank_layer(current, l, std::move(latents), config.seed, epoch);
        auto app = apply_layers_mps(current, std::move(state), l, l + 1, chi_evolve, config.cutoff);
        state = std::move(app.state);
        trunc += app.truncation_error;
      }
      rec.loss = nlf_from_overlap(overlap(target, state), n);
      rec.entropies = bond_entropies(normalize(std::move(state)));
      rec.truncation_error = trunc;
    } catch (const NumericalError& err) {
      throw TrainingAborted(fmt::format("training aborted at epoch {} ({} layers): {}", epoch, n_layers, err.what()),
                            last_good, std::move(log));
    }
    rec.epoch = epoch;
    rec.n_layers = n_layers;
    double sum = 0.0;
    for (double s : rec.entropies) sum += s;
    rec.avg_entropy = sum / static_cast<double>(rec.entropies.size());
    rec.eta = eta;
    if (config.record_wall_time)
      rec.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    log.push_back(rec);
    if (observer.on_epoch) observer.on_epoch(log.back());

    const std::size_t w = config.convergence_window;
    if (log.size() > w) {
      const double now = log.back().loss;
      const double then = log[log.size() - 1 - w].loss;
      if (std::abs(now - then) <= config.convergence_tol * std::abs(now)) {
        converged = true;
        break;
      }
    }
  }
  return {std::move(current), std::move(log), converged};
}

TrainResult grow_and_train(const MatrixProductState& target, std::size_t n_layers, const TrainConfig& config,
                           const TrainObserver& observer) {
  return grow_and_train(target, zero_state(target.n_sites()), n_layers, config, observer);
}

TrainResult grow_and_train(const MatrixProductState& target, const MatrixProductState& psi0, std::size_t n_layers,
                           const TrainConfig& config, const TrainObserver& observer) {
  validate(config);
  if (n_layers == 0) throw ArgumentError("the final layer count must be at least 1");
  const std::size_t n = target.n_sites();
  const std::size_t chi = resolve_chi_evolve(config, n_layers, target.largest_bond());

  TrainResult result{init_first_layer(n, config.seed), {}, {}, {}};
  std::size_t next_epoch = 1;
  for (std::size_t stage = 1; stage <= n_layers; ++stage) {
    if (stage > 1)
      result.circuit = append_identity_layer(result.circuit, config.epsilon_new_layer, config.seed + stage - 1);
    try {
      StageResult sr = train_stage(target, result.circuit, psi0, config, chi, next_epoch, observer);
      next_epoch += sr.log.size();
      result.circuit = std::move(sr.circuit);
      result.stage_losses.push_back(sr.log.back().loss);
      result.stage_converged.push_back(sr.converged);
      if (observer.on_stage_end) observer.on_stage_end(stage, result.circuit, sr.log);
      result.log.insert(result.log.end(), sr.log.begin(), sr.log.end());
    } catch (const TrainingAborted& aborted) {
      std::vector<MetricsRecord> full = result.log;
      full.insert(full.end(), aborted.log().begin(), aborted.log().end());
      throw TrainingAborted(aborted.what(), aborted.circuit(), std::move(full));
    }
  }
  return result;
}

}  // namespace stairsynth
