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

#include "stairsynth/commands.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include <fmt/format.h>

#include "io_util.hpp"
#include "json_writer.hpp"
#include "stairsynth/circuit_io.hpp"
#include "stairsynth/errors.hpp"
#include "stairsynth/mps_io.hpp"
#include "stairsynth/spin_chain.hpp"

namespace stairsynth {
namespace {

namespace fs = std::filesystem;
using Json = nlohmann::ordered_json;
using detail::format_real;

Json reals(const std::vector<double>& values) {
  auto arr = Json::array();
  for (double v : values) arr.push_back(v);
  return arr;
}

TargetMetadata describe(const MatrixProductState& state, TargetKind kind) {
  TargetMetadata meta;
  meta.kind = kind;
  meta.n_sites = state.n_sites();
  meta.chi = state.largest_bond();
  meta.entropies = bond_entropies(state);
  meta.mid_entropy = meta.entropies[state.n_sites() / 2 - 1];
  return meta;
}

class CsvFile {
 public:
  CsvFile(const fs::path& path, const std::string& header) : out_(path, std::ios::binary | std::ios::trunc) {
    if (!out_) throw ArgumentError(fmt::format("cannot write '{}'", path.string()));
    out_ << header << '\n';
  }
  void row(const std::string& line) {
    out_ << line << '\n';
    out_.flush();
  }

 private:
  std::ofstream out_;
};

std::string entropy_columns(std::size_t n_bonds) {
  std::string s;
  for (std::size_t b = 1; b <= n_bonds; ++b) s += fmt::format(",S_{}", b);
  return s;
}

std::string join_reals(const std::vector<double>& values) {
  std::string s;
  for (double v : values) s += "," + format_real(v);
  return s;
}

Json read_json_file(const fs::path& path) { return detail::parse_json(detail::read_text_file(path), path.string()); }

}  // namespace

BuiltTarget build_target(const TargetSpec& spec) {
  switch (spec.kind) {
    case TargetKind::kHeisenbergGs:
    case TargetKind::kXyGs: {
      const SpinChainModel model{spec.kind == TargetKind::kHeisenbergGs ? ChainKind::kHeisenberg : ChainKind::kXY,
                                 spec.n_sites};
      DmrgOptions options;
      options.chi = spec.chi;
      options.max_sweeps = spec.dmrg.max_sweeps;
      options.energy_tol = spec.dmrg.energy_tol;
      options.cutoff = spec.dmrg.cutoff;
      options.seed = spec.dmrg.seed;
      options.lanczos.max_iterations = spec.dmrg.lanczos_iterations;
      options.lanczos.tolerance = spec.dmrg.lanczos_tol;
      DmrgResult dmrg = dmrg_ground_state(build_mpo(model), options);
      TargetMetadata meta = describe(dmrg.state, spec.kind);
      meta.energy = dmrg.energy;
      meta.sweeps_used = dmrg.sweeps_used;
      meta.converged = dmrg.converged;
      return {std::move(dmrg.state), std::move(meta)};
    }
    case TargetKind::kRandomMps: {
      MatrixProductState state = random_mps(spec.n_sites, spec.chi, spec.seed);
      TargetMetadata meta = describe(state, spec.kind);
      return {std::move(state), std::move(meta)};
    }
    case TargetKind::kGhz: {
      MatrixProductState state = ghz_state(spec.n_sites);
      TargetMetadata meta = describe(state, spec.kind);
      return {std::move(state), std::move(meta)};
    }
    case TargetKind::kMpsFile: {
      MatrixProductState state = normalize(load_mps(spec.path));
      if (spec.n_sites != 0 && spec.n_sites != state.n_sites())
        throw ArgumentError(fmt::format("'{}' has {} sites, config says {}", spec.path, state.n_sites(), spec.n_sites));
      TargetMetadata meta = describe(state, spec.kind);
      return {std::move(state), std::move(meta)};
    }
  }
  throw ArgumentError("unknown target kind");
}

std::string target_metadata_to_json(const TargetMetadata& meta) {
  Json doc;
  doc["kind"] = to_string(meta.kind);
  doc["n_sites"] = meta.n_sites;
  doc["chi"] = meta.chi;
  if (meta.energy) doc["energy"] = *meta.energy;
  if (meta.sweeps_used) doc["sweeps_used"] = *meta.sweeps_used;
  if (meta.converged) doc["converged"] = *meta.converged;
  doc["mid_entropy"] = meta.mid_entropy;
  doc["entropies"] = reals(meta.entropies);
  return detail::dump_json(doc, 2) + "\n";
}

BuildTargetOutput cmd_build_target(const ExperimentConfig& config) {
  validate(config);
  const fs::path dir = run_directory(config);
  BuiltTarget built = build_target(config.target);
  BuildTargetOutput out{dir / "target.mps.json", dir / "target.json", built.meta};
  save_mps(built.state, out.mps_path);
  detail::write_text_file(out.meta_path, target_metadata_to_json(built.meta));
  if (built.meta.converged && !*built.meta.converged)
    throw NumericalError(fmt::format("DMRG did not reach energy_tol {:.3g} within {} sweeps (energy {:.12f}); "
                                     "outputs written to '{}'",
                                     config.target.dmrg.energy_tol, *built.meta.sweeps_used, *built.meta.energy,
                                     dir.string()));
  return out;
}

TrainOutput cmd_train(const ExperimentConfig& config, const std::optional<fs::path>& target_file) {
  validate(config);
  const fs::path dir = run_directory(config);
  fs::create_directories(dir / "checkpoints");
  detail::write_text_file(dir / "config.json", serialize_experiment_config(config));

  MatrixProductState target;
  TargetMetadata meta;
  if (target_file) {
    target = normalize(load_mps(*target_file));
    meta = describe(target, TargetKind::kMpsFile);
    if (*target_file != dir / "target.mps.json") save_mps(target, dir / "target.mps.json");
    detail::write_text_file(dir / "target.json", target_metadata_to_json(meta));
  } else if (fs::exists(dir / "target.mps.json") && fs::exists(dir / "target.json")) {
    target = load_mps(dir / "target.mps.json");
    const Json stored = read_json_file(dir / "target.json");
    meta = describe(target, parse_target_kind(stored.at("kind").get<std::string>()));
  } else {
    cmd_build_target(config);
    target = load_mps(dir / "target.mps.json");
    meta = describe(target, config.target.kind);
  }
  const std::size_t n = target.n_sites();
  if (config.target.n_sites != 0 && config.target.n_sites != n)
    throw ArgumentError(fmt::format("target has {} sites, config says {}", n, config.target.n_sites));

  const TrainConfig& tc = config.train.config;
  const std::size_t n_layers = config.train.n_layers;
  const std::size_t chi_evolve = resolve_chi_evolve(tc, n_layers, target.largest_bond());

  CsvFile metrics(dir / "metrics.csv", kMetricsHeader);
  CsvFile profile(dir / "entropy_profile.csv", "epoch,n_layers" + entropy_columns(n - 1));
  std::vector<std::size_t> stage_epochs;

  TrainObserver observer;
  observer.on_epoch = [&](const MetricsRecord& r) {
    metrics.row(fmt::format("{},{},{},{},{},{},{}", r.epoch, r.n_layers, format_real(r.loss),
                            format_real(r.avg_entropy), format_real(r.truncation_error), format_real(r.eta),
                            format_real(r.wall_ms)));
    if ((r.epoch - 1) % tc.entropy_every == 0)
      profile.row(fmt::format("{},{}{}", r.epoch, r.n_layers, join_reals(r.entropies)));
  };
  observer.on_stage_end = [&](std::size_t stage, const StairCircuit& circuit, const std::vector<MetricsRecord>& log) {
    save_circuit(circuit, dir / "checkpoints" / fmt::format("stage_{}.json", stage));
    stage_epochs.push_back(log.size());
  };

  const auto write_summary = [&](const std::string& status, const std::vector<double>& losses,
                                 const std::vector<bool>& converged, std::size_t epochs) {
    Json doc;
    doc["run_id"] = config.run_id;
    doc["status"] = status;
    doc["target_kind"] = to_string(meta.kind);
    doc["n_sites"] = n;
    doc["target_chi"] = meta.chi;
    doc["target_mid_entropy"] = meta.mid_entropy;
    doc["n_layers"] = n_layers;
    doc["chi_evolve"] = chi_evolve;
    doc["epochs"] = epochs;
    doc["stage_losses"] = reals(losses);
    doc["stage_converged"] = converged;
    doc["stage_epochs"] = stage_epochs;
    detail::write_text_file(dir / "summary.json", detail::dump_json(doc, 2) + "\n");
  };

  const MatrixProductState psi0 = zero_state(n);
  try {
    TrainResult result = grow_and_train(target, psi0, n_layers, tc, observer);
    save_circuit(result.circuit, dir / "circuit.json");
    write_summary("completed", result.stage_losses, result.stage_converged, result.log.size());
    return {dir, std::move(result)};
  } catch (const TrainingAborted& aborted) {
    save_circuit(aborted.circuit(), dir / "circuit_partial.json");
    std::vector<double> losses;
    std::vector<bool> converged;
    for (std::size_t s = 0, offset = 0; s < stage_epochs.size(); offset += stage_epochs[s++]) {
      losses.push_back(aborted.log()[offset + stage_epochs[s] - 1].loss);
      converged.push_back(false);
    }
    write_summary("aborted", losses, converged, aborted.log().size());
    throw;
  }
}

EvalReport evaluate(const StairCircuit& circuit, const MatrixProductState& target, std::size_t chi_evolve,
                    double cutoff) {
  if (circuit.n_sites() != target.n_sites())
    throw ArgumentError(fmt::format("checkpoint has {} sites but the target has {}", circuit.n_sites(),
                                    target.n_sites()));
  EvalReport r;
  r.n_sites = target.n_sites();
  r.n_layers = circuit.n_layers();
  r.chi_target = target.largest_bond();
  TrainConfig defaults;
  defaults.chi_evolve = chi_evolve;
  r.chi_evolve = resolve_chi_evolve(defaults, r.n_layers, r.chi_target);
  auto app = apply_circuit_mps(circuit, zero_state(r.n_sites), r.chi_evolve, cutoff);
  const Complex o = overlap(target, app.state);
  r.loss = nlf_from_overlap(o, r.n_sites);
  r.overlap_modulus = std::abs(o);
  r.truncation_error = app.truncation_error;
  r.entropies = bond_entropies(normalize(std::move(app.state)));
  double sum = 0.0;
  for (double s : r.entropies) sum += s;
  r.avg_entropy = sum / static_cast<double>(r.entropies.size());
  r.max_entropy = *std::max_element(r.entropies.begin(), r.entropies.end());
  r.entropy_bound = static_cast<double>(r.n_layers) * std::log(4.0);
  r.entropy_bound_ok = r.max_entropy <= r.entropy_bound + 1e-9;
  r.circuit_params = circuit_param_count(r.n_sites, r.n_layers);
  r.mps_params = mps_param_count(r.n_sites, r.chi_target);
  r.ratio = compression_ratio(r.n_sites, r.chi_target, r.n_layers);
  return r;
}

EvalReport cmd_eval(const fs::path& checkpoint, const fs::path& target, std::size_t chi_evolve) {
  const StairCircuit circuit = load_circuit(checkpoint);
  const MatrixProductState psi = normalize(load_mps(target));
  return evaluate(circuit, psi, chi_evolve);
}

std::string eval_report_to_json(const EvalReport& r) {
  Json doc;
  doc["n_sites"] = r.n_sites;
  doc["n_layers"] = r.n_layers;
  doc["chi_target"] = r.chi_target;
  doc["chi_evolve"] = r.chi_evolve;
  doc["loss_F"] = r.loss;
  doc["overlap_modulus"] = r.overlap_modulus;
  doc["avg_entropy"] = r.avg_entropy;
  doc["max_entropy"] = r.max_entropy;
  doc["entropy_bound"] = r.entropy_bound;
  doc["entropy_bound_ok"] = r.entropy_bound_ok;
  doc["truncation_error"] = r.truncation_error;
  doc["circuit_param_count"] = r.circuit_params;
  doc["mps_param_count"] = r.mps_params;
  doc["r"] = r.ratio.r;
  doc["r0"] = r.ratio.r0;
  doc["entropies"] = reals(r.entropies);
  return detail::dump_json(doc, 2) + "\n";
}

ReportOutput cmd_report(const fs::path& dir) {
  if (!fs::is_directory(dir)) throw ArgumentError(fmt::format("'{}' is not a directory", dir.string()));
  std::vector<fs::path> runs;
  if (fs::exists(dir / "summary.json")) {
    runs.push_back(dir);
  } else {
    for (const auto& entry : fs::directory_iterator(dir))
      if (entry.is_directory() && fs::exists(entry.path() / "summary.json")) runs.push_back(entry.path());
  }
  if (runs.empty()) throw ArgumentError(fmt::format("no runs with a summary.json under '{}'", dir.string()));
  std::sort(runs.begin(), runs.end());

  ReportOutput out;
  out.report_dir = dir / "report";
  out.runs = runs.size();
  fs::create_directories(out.report_dir);
  std::ostringstream layers, entropy;
  layers << "run_id,target_kind,n_sites,chi,n_layers,loss_F,converged\n";
  entropy << "run_id,target_kind,n_sites,chi,mid_entropy,n_layers,loss_F\n";

  for (const auto& run : runs) {
    try {
      const Json summary = read_json_file(run / "summary.json");
      const auto run_id = summary.at("run_id").get<std::string>();
      const auto kind = summary.at("target_kind").get<std::string>();
      const auto n = summary.at("n_sites").get<std::size_t>();
      const auto chi = summary.at("target_chi").get<std::size_t>();
      const auto mid = summary.at("target_mid_entropy").get<double>();
      const auto& losses = summary.at("stage_losses");
      const auto& converged = summary.at("stage_converged");
      for (std::size_t s = 0; s < losses.size(); ++s) {
        const double f = losses[s].get<double>();
        layers << fmt::format("{},{},{},{},{},{},{}\n", run_id, kind, n, chi, s + 1, format_real(f),
                              converged[s].get<bool>() ? 1 : 0);
        entropy << fmt::format("{},{},{},{},{},{},{}\n", run_id, kind, n, chi, format_real(mid), s + 1,
                               format_real(f));
      }

      const fs::path profile = run / "entropy_profile.csv";
      if (fs::exists(profile)) {
        std::istringstream in(detail::read_text_file(profile));
        std::string line;
        std::getline(in, line);
        std::ostringstream matrix;
        matrix << "epoch" << entropy_columns(n - 1) << '\n';
        while (std::getline(in, line)) {
          if (line.empty()) continue;
          const auto first = line.find(',');
          const auto second = line.find(',', first + 1);
          if (first == std::string::npos || second == std::string::npos)
            throw ArgumentError(fmt::format("malformed row in '{}'", profile.string()));
          matrix << line.substr(0, first) << line.substr(second) << '\n';
        }
        const fs::path file = out.report_dir / fmt::format("entropy_matrix_{}.csv", run_id);
        detail::write_text_file(file, matrix.str());
        out.files.push_back(file);
      }
    } catch (const nlohmann::json::exception& e) {
      throw ArgumentError(fmt::format("malformed summary in '{}': {}", run.string(), e.what()));
    }
  }
  detail::write_text_file(out.report_dir / "f_vs_layers.csv", layers.str());
  detail::write_text_file(out.report_dir / "f_vs_entropy.csv", entropy.str());
  out.files.insert(out.files.begin(), {out.report_dir / "f_vs_layers.csv", out.report_dir / "f_vs_entropy.csv"});
  return out;
}

}  // namespace stairsynth
