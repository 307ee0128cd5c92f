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

// Acceptance gate: runs every criterion and prints one PASS/FAIL line each.
// Usage: acceptance [criterion numbers...]   (default: all)

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <limits>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <fmt/format.h>
#include <fmt/ranges.h>

#include "oracles.hpp"
#include "stairsynth/circuit.hpp"
#include "stairsynth/commands.hpp"
#include "stairsynth/experiment.hpp"
#include "stairsynth/linalg.hpp"
#include "stairsynth/mps.hpp"
#include "stairsynth/optimizer.hpp"
#include "stairsynth/spin_chain.hpp"

namespace {

using namespace stairsynth;
namespace fs = std::filesystem;

struct Outcome {
  bool pass = false;
  std::string detail;
};

double max_abs(const oracle::Matrix& m) { return m.cwiseAbs().maxCoeff(); }

StairCircuit random_circuit(std::size_t n, std::size_t layers, std::uint64_t seed) {
  StairCircuit c = init_first_layer(n, seed);
  oracle::Random rng(seed);
  for (std::size_t l = 1; l < layers; ++l) {
    std::vector<ComplexTensor> latents;
    for (std::size_t s = 0; s + 1 < n; ++s) latents.push_back(rng.gaussian_tensor({4, 4}));
    c = c.with_appended_layer(std::move(latents), seed + l);
  }
  return c;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path scratch_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("stairsynth_acceptance_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

MatrixProductState heisenberg_target(std::size_t n, std::size_t chi) {
  TargetSpec spec;
  spec.kind = TargetKind::kHeisenbergGs;
  spec.n_sites = n;
  spec.chi = chi;
  return build_target(spec).state;
}

Outcome gradient_correctness() {
  constexpr std::size_t kSites = 6, kLayers = 2;
  constexpr double kStep = 1e-5;
  const MatrixProductState psi0 = zero_state(kSites);
  double worst = 0.0;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const StairCircuit c = random_circuit(kSites, kLayers, seed);
    const MatrixProductState target = random_mps(kSites, 4, 1000 + seed);
    const std::vector<std::size_t> kept = negative_log_fidelity(target, c, psi0, 64, 0.0).kept;
    for (std::size_t layer = 0; layer < kLayers; ++layer) {
      const LayerGradient g = loss_gradient(target, c, psi0, layer, 64, kDefaultBroadening, 0.0);
      double err = 0.0, scale = 0.0;
      for (std::size_t site = 0; site + 1 < kSites; ++site) {
        const auto loss = [&](const ComplexTensor& m) {
          std::vector<ComplexTensor> latents = c.layer_latents(layer);
          latents[site] = m;
          return negative_log_fidelity_replay(target, c.with_layer(layer, latents), psi0, kept).loss;
        };
        const ComplexTensor& point = c.gate(layer, site).matrix;
        for (std::size_t i = 0; i < point.size(); ++i) {
          double partial[2];
          for (int part = 0; part < 2; ++part) {
            const Complex dz = part == 0 ? Complex{kStep, 0.0} : Complex{0.0, kStep};
            ComplexTensor plus = point, minus = point;
            plus[i] += dz;
            minus[i] -= dz;
            partial[part] = (loss(plus) - loss(minus)) / (2.0 * kStep);
          }
          const Complex analytic = g.gradients[site][i];
          err = std::max({err, std::abs(analytic.real() - partial[0]), std::abs(analytic.imag() - partial[1])});
          scale = std::max({scale, std::abs(partial[0]), std::abs(partial[1])});
        }
      }
      worst = std::max(worst, err / scale);
    }
  }
  return {worst < 1e-5, fmt::format("max relative error {:.3e} over 20 instances (bound 1e-5)", worst)};
}

Outcome projection_correctness() {
  oracle::Random rng(2024);
  const oracle::Matrix id = oracle::Matrix::Identity(4, 4);
  double unitarity = 0.0, idempotence = 0.0, scale_gap = 0.0, slack = std::numeric_limits<double>::infinity();
  for (int sample = 0; sample < 1000; ++sample) {
    const ComplexTensor latent = rng.gaussian_tensor({4, 4});
    const ComplexTensor w = project_to_unitary(latent);
    const oracle::Matrix we = oracle::to_eigen(w);
    unitarity = std::max(unitarity, max_abs(we.adjoint() * we - id));
    idempotence = std::max(idempotence, max_abs(oracle::to_eigen(project_to_unitary(w)) - we));
    const double c = std::exp(rng.uniform(-5.0, 5.0));
    scale_gap = std::max(scale_gap, max_abs(oracle::to_eigen(project_to_unitary(latent * Complex{c, 0.0})) - we));
    const oracle::Matrix g = oracle::to_eigen(latent);
    const double best = (g.adjoint() * we).trace().real();
    for (int q = 0; q < 100; ++q) slack = std::min(slack, best - (g.adjoint() * rng.haar_unitary(4)).trace().real());
  }
  const bool ok = unitarity < 1e-12 && idempotence < 1e-12 && scale_gap < 1e-12 && slack >= 0.0;
  return {ok, fmt::format("unitarity {:.2e}, idempotence {:.2e}, scale {:.2e}, min trace margin {:.3e}", unitarity,
                          idempotence, scale_gap, slack)};
}

Outcome oracle_equivalence() {
  double worst = 0.0;
  std::size_t cases = 0;
  for (std::size_t n : {4, 6, 8, 10}) {
    for (std::size_t layers = 1; layers <= 3; ++layers) {
      for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        const std::uint64_t s = 100 * n + 10 * layers + seed;
        const StairCircuit c = random_circuit(n, layers, s);
        const MatrixProductState psi0 = random_mps(n, 4, s + 1);
        const MatrixProductState target = random_mps(n, 4, s + 2);
        const Complex via_mps = overlap(target, apply_circuit_mps(c, psi0, 1u << n, 0.0).state);
        oracle::Vector v = oracle::mps_amplitudes(psi0);
        for (std::size_t l = 0; l < c.n_layers(); ++l)
          for (std::size_t site = 0; site + 1 < n; ++site)
            v = oracle::apply_gate(v, oracle::to_eigen(c.unitary(l, site)), site, n);
        const Complex dense = oracle::mps_amplitudes(target).dot(v);
        worst = std::max(worst, std::abs(via_mps - dense));
        ++cases;
      }
    }
  }
  return {worst < 1e-10, fmt::format("max overlap difference {:.3e} over {} circuits (bound 1e-10)", worst, cases)};
}

Outcome ground_state_solvers() {
  std::string detail;
  bool ok = true;
  for (ChainKind kind : {ChainKind::kHeisenberg, ChainKind::kXY}) {
    const SpinChainModel model{kind, 12};
    DmrgOptions options;
    options.chi = 64;
    const double dmrg = dmrg_ground_state(build_mpo(model), options).energy;
    const double exact = exact_ground_state(model).energy;
    ok = ok && std::abs(dmrg - exact) < 1e-6;
    detail += fmt::format("{} N=12 |dE| {:.2e}; ", to_string(kind), std::abs(dmrg - exact));
  }
  DmrgOptions two;
  two.chi = 2;
  const double e2 = dmrg_ground_state(build_mpo({ChainKind::kHeisenberg, 2}), two).energy;
  ok = ok && std::abs(e2 + 0.75) < 1e-10;
  return {ok, detail + fmt::format("Heisenberg N=2 E {:.12f}", e2)};
}

ExperimentConfig ghz_config(const fs::path& out) {
  ExperimentConfig c;
  c.run_id = "ghz6";
  c.output_dir = out.string();
  c.target.kind = TargetKind::kGhz;
  c.target.n_sites = 6;
  c.train.n_layers = 1;
  c.train.config.epochs_per_stage = 2000;
  return c;
}

Outcome exact_reachability() {
  const fs::path dir = scratch_dir("c5");
  const TrainOutput out = cmd_train(ghz_config(dir));
  const double f = out.result.stage_losses.back();
  const std::size_t epochs = out.result.log.size();
  fs::remove_all(dir);
  return {f < 1e-3 && epochs <= 2000, fmt::format("F = {:.3e} after {} epochs (bound 1e-3, 2000 epochs)", f, epochs)};
}

struct LongChainRun {
  std::vector<double> stage_losses;
  double worst_bound_excess = -std::numeric_limits<double>::infinity();
  std::size_t logged = 0;
};

const LongChainRun& long_chain_run() {
  static const LongChainRun run = [] {
    LongChainRun r;
    const MatrixProductState target = heisenberg_target(48, 32);
    TrainObserver observer;
    observer.on_epoch = [&](const MetricsRecord& rec) {
      const double bound = static_cast<double>(rec.n_layers) * std::log(4.0);
      for (double s : rec.entropies) r.worst_bound_excess = std::max(r.worst_bound_excess, s - bound);
      ++r.logged;
    };
    r.stage_losses = grow_and_train(target, 3, TrainConfig{}, observer).stage_losses;
    return r;
  }();
  return run;
}

Outcome layer_trend() {
  const auto& f = long_chain_run().stage_losses;
  const bool ok = f.size() == 3 && f[0] > f[1] && f[1] > f[2] && f[1] < 0.5;
  return {ok, fmt::format("stage F = [{}] (strictly decreasing, F(2) < 0.5)", fmt::join(f, ", "))};
}

Outcome entanglement_bound() {
  const LongChainRun& r = long_chain_run();
  return {r.logged > 0 && r.worst_bound_excess <= 1e-9,
          fmt::format("max(S_n - n_L ln4) = {:.4f} over {} epochs (bound 1e-9)", r.worst_bound_excess, r.logged)};
}

Outcome compression_ledger() {
  const double expected = 752.0 / 94336.0;
  const CompressionRatio one = compression_ratio(48, 32, 1);
  const EvalReport report = evaluate(init_first_layer(48, 1), random_mps(48, 32, 1));
  bool linear = true;
  for (std::size_t layers = 1; layers <= 10; ++layers) {
    const CompressionRatio r = compression_ratio(48, 32, layers);
    linear = linear && circuit_param_count(48, layers) == layers * circuit_param_count(48, 1) &&
             r.r == static_cast<double>(layers) * one.r0 && r.r0 == one.r0;
  }
  const bool ok = std::abs(one.r - expected) < 1e-12 && std::abs(report.ratio.r - expected) < 1e-12 &&
                  report.ratio.r < 1e-2 && one.r0 == one.r && linear;
  return {ok, fmt::format("r(48,32,1) = {:.15f}, reported {:.15f}, linear in N_L: {}", one.r, report.ratio.r,
                          linear ? "yes" : "no")};
}

Outcome random_benchmark() {
  double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
  for (std::size_t chi : {2, 4, 8, 16, 32})
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
      const double s = bond_entropies(random_mps(48, chi, seed))[23];
      lo = std::min(lo, s);
      hi = std::max(hi, s);
    }
  const bool covers = lo <= 0.6 && hi >= 3.0;

  const TrainResult random_run = grow_and_train(random_mps(48, 8, 1), 2, TrainConfig{});
  bool finite = true;
  double running = std::numeric_limits<double>::infinity();
  bool monotone = true;
  for (const MetricsRecord& rec : random_run.log) {
    finite = finite && std::isfinite(rec.loss);
    const double next = std::min(running, rec.loss);
    monotone = monotone && next <= running;
    running = next;
  }
  const bool trained = finite && monotone && running < random_run.log.front().loss;

  std::vector<double> entropy, loss;
  for (std::size_t chi : {8, 64}) {
    const MatrixProductState target = heisenberg_target(48, chi);
    entropy.push_back(bond_entropies(target)[23]);
    loss.push_back(grow_and_train(target, 2, TrainConfig{}).stage_losses.back());
  }
  const bool trend = entropy[1] > entropy[0] && loss[1] > loss[0];

  return {covers && trained && trend,
          fmt::format("mid-chain S range [{:.3f}, {:.3f}] (needs to cover [0.6, 3.0]): {}; random chi=8 N_L=2 run: "
                      "{} epochs, running-min F {:.4e}: {}; Heisenberg S {:.4f} -> {:.4f}, F {:.4e} -> {:.4e}: {}",
                      lo, hi, covers ? "ok" : "NOT covered", random_run.log.size(), running,
                      trained ? "ok" : "failed", entropy[0], entropy[1], loss[0], loss[1],
                      trend ? "ok" : "not increasing")};
}

Outcome determinism() {
  const fs::path a = scratch_dir("c10a"), b = scratch_dir("c10b");
  cmd_train(ghz_config(a));
  cmd_train(ghz_config(b));
  const std::string first = slurp(a / "ghz6" / "metrics.csv"), second = slurp(b / "ghz6" / "metrics.csv");
  fs::remove_all(a);
  fs::remove_all(b);
  return {!first.empty() && first == second,
          fmt::format("metrics.csv {} bytes, reruns {}", first.size(), first == second ? "identical" : "differ")};
}

struct Criterion {
  int id;
  const char* name;
  std::function<Outcome()> run;
};

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> criteria{
      {1, "gradient correctness", gradient_correctness},
      {2, "projection correctness", projection_correctness},
      {3, "oracle equivalence", oracle_equivalence},
      {4, "ground-state solvers", ground_state_solvers},
      {5, "exact reachability", exact_reachability},
      {6, "layer trend at N=48", layer_trend},
      {7, "entanglement bound", entanglement_bound},
      {8, "compression ledger", compression_ledger},
      {9, "random-MPS benchmark", random_benchmark},
      {10, "determinism", determinism},
  };
  std::set<int> selected;
  for (int i = 1; i < argc; ++i) selected.insert(std::atoi(argv[i]));

  int failures = 0;
  for (const Criterion& c : criteria) {
    if (!selected.empty() && !selected.count(c.id)) continue;
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, fmt::format("exception: {}", e.what())};
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (!o.pass) ++failures;
    fmt::print("{} [{}] {}: {} ({:.1f} s)\n", o.pass ? "PASS" : "FAIL", c.id, c.name, o.detail, seconds);
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
