// Copyright 2026 The mosaic Authors
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

#include "mosaic/pipeline.hpp"

#include <atomic>
#include <cmath>
#include <thread>

#include "json.hpp"
#include "mosaic/errors.hpp"
#include "mosaic/io.hpp"
#include "mosaic/rng.hpp"

namespace mosaic {

using ordered_json = nlohmann::ordered_json;

double PipelineResult::error_removed(double x) const {
  double base = std::abs(unmitigated - ideal);
  if (base == 0.0) return 1.0;
  return 1.0 - std::abs(x - ideal) / base;
}

PlanRecovery learn_plan_recoveries(const PartitionPlan& plan, const FitConfig& fit_cfg) {
  PlanRecovery out;
  out.recoveries.resize(plan.blocks.size());
  out.reports.resize(plan.blocks.size());
  for (std::size_t bi = 0; bi < plan.blocks.size(); ++bi) {
    const Block& b = plan.blocks[bi];
    BlockRecovery rec;
    rec.block_id = b.id;
    rec.insert_after_layer = b.layer_end - 1;
    BlockReport rep;
    rep.id = b.id;
    rep.layer_begin = b.layer_begin;
    rep.layer_end = b.layer_end;
    for (const auto& sf : fit_block_channels(b, fit_cfg)) {
      QuasiProbability inv = invert_channel(sf.fit.channel);
      rep.gamma *= inv.gamma();
      rep.fit_loss = std::max(rep.fit_loss, sf.fit.final_loss);
      rep.fit_residual = std::max(rep.fit_residual, sf.fit.offdiag_residual);
      rep.iterations = std::max(rep.iterations, sf.fit.iterations);
      rep.converged = rep.converged && sf.fit.converged;
      rep.scopes.push_back(sf.scope.qubits);
      rec.scopes.push_back(ScopeRecovery{sf.scope.qubits, std::move(inv)});
    }
    out.gamma_total *= rep.gamma;
    out.all_converged = out.all_converged && rep.converged;
    out.recoveries[bi] = std::move(rec);
    out.reports[bi] = std::move(rep);
  }
  return out;
}

namespace {

std::vector<PauliInsertion> insertions_for(const SampledCircuit& sc,
                                           const std::vector<BlockRecovery>& recoveries) {
  std::vector<PauliInsertion> ins;
  ins.reserve(sc.corrections.size());
  for (const auto& [block_ordinal, pauli] : sc.corrections) {
    ins.push_back(PauliInsertion{recoveries[static_cast<std::size_t>(block_ordinal)].insert_after_layer, pauli});
  }
  return ins;
}

double unique_value(const NoisyCircuit& nc, const Observable& obs,
                    const std::vector<PauliInsertion>& ins, const RunConfig& cfg,
                    std::uint64_t exec_seed) {
  SimOptions sim_opts;
  if (cfg.noisy_corrections) sim_opts.noisy_correction_p1 = cfg.p1;
  if (cfg.backend == Backend::Trajectory) {
    return trajectory_expectation(nc, obs, cfg.shots, exec_seed, ins, sim_opts).value;
  }
  DensityState rho = simulate_density(nc, ins, sim_opts);
  if (cfg.exact_expectation) return expectation(rho, obs);
  return sample_shots(rho, obs, cfg.shots, exec_seed).value;
}

}  // namespace

MitigationResult execute_and_estimate(const NoisyCircuit& nc, const Observable& obs,
                                      const std::vector<BlockRecovery>& recoveries,
                                      std::int64_t n_samples, const RunConfig& cfg) {
  double gamma_total = 1.0;
  for (const auto& r : recoveries) gamma_total *= r.gamma();

  auto samples = sample_corrections(recoveries, nc.n, n_samples, cfg.seed);
  auto table = deduplicate(samples);

  std::vector<double> values(table.size(), 0.0);
  Rng exec_base(cfg.seed ^ 0xd1b54a32d192ed03ULL);
  int threads = std::max(1, cfg.threads);
  if (threads == 1 || table.size() < 2) {
    for (std::size_t i = 0; i < table.size(); ++i) {
      values[i] = unique_value(nc, obs, insertions_for(table[i].representative, recoveries), cfg,
                               exec_base.substream(i).next_u64());
    }
  } else {
    std::atomic<std::size_t> cursor{0};
    auto worker = [&] {
      for (;;) {
        std::size_t i = cursor.fetch_add(1);
        if (i >= table.size()) return;
        values[i] = unique_value(nc, obs, insertions_for(table[i].representative, recoveries), cfg,
                                 exec_base.substream(i).next_u64());
      }
    };
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  return mitigated_estimate(table, values, gamma_total, n_samples);
}

CircuitIR resolve_circuit(const RunConfig& cfg) {
  const std::string& src = cfg.circuit;
  auto parse_fields = [&](const std::string& s) {
    std::vector<std::string> fields;
    std::size_t pos = 0;
    while (pos <= s.size()) {
      auto colon = s.find(':', pos);
      if (colon == std::string::npos) {
        fields.push_back(s.substr(pos));
        break;
      }
      fields.push_back(s.substr(pos, colon - pos));
      pos = colon + 1;
    }
    return fields;
  };
  if (src.rfind("tfim:", 0) == 0) {
    auto f = parse_fields(src.substr(5));
    if (f.size() != 2) throw config_error("circuit spec: expected tfim:<n>:<depth>");
    int n = std::stoi(f[0]), depth = std::stoi(f[1]);
    VqeConfig vqe_cfg;
    vqe_cfg.seed = cfg.seed;
    return gen_tfim_ansatz(n, depth, classical_vqe(n, depth, vqe_cfg).params);
  }
  if (src.rfind("random:", 0) == 0) {
    auto f = parse_fields(src.substr(7));
    if (f.size() != 3) throw config_error("circuit spec: expected random:<n>:<depth>:<seed>");
    return gen_random_circuit(std::stoi(f[0]), std::stoi(f[1]), std::stoull(f[2]));
  }
  return parse_circuit(read_file(src));
}

PipelineResult run_mitigation(const RunConfig& cfg) {
  CircuitIR circuit = resolve_circuit(cfg);
  Observable obs = parse_observable(cfg.observable, circuit.n);
  double p1 = cfg.p1_explicit ? cfg.p1 : default_p1(cfg.p2);

  NoisyCircuit nc;
  nc.n = circuit.n;
  nc.layers = layerize(circuit);
  if (!cfg.noise_file.empty()) {
    nc.layer_noise = noise_models_from_json(read_file(cfg.noise_file), circuit.n);
    if (nc.layer_noise.size() != nc.layers.size()) {
      throw config_error("noise file covers " + std::to_string(nc.layer_noise.size()) +
                         " layers, circuit has " + std::to_string(nc.layers.size()));
    }
  } else {
    for (const auto& layer : nc.layers) {
      nc.layer_noise.push_back(synth_layer_noise(layer, circuit.n, p1, cfg.p2, cfg.noise_seed));
    }
  }

  PipelineResult out;
  out.n = circuit.n;

  // ideal and unmitigated references
  NoisyCircuit ideal_nc = nc;
  ideal_nc.layer_noise.assign(nc.layers.size(), {});
  if (cfg.backend == Backend::Trajectory) {
    out.ideal = trajectory_expectation(ideal_nc, obs, cfg.shots, cfg.seed ^ 0xabcdef12ULL).value;
    out.unmitigated = trajectory_expectation(nc, obs, cfg.shots, cfg.seed ^ 0x12fedcbaULL).value;
  } else {
    DensityState rho_ideal = simulate_density(ideal_nc);
    DensityState rho_noisy = simulate_density(nc);
    if (cfg.exact_expectation) {
      out.ideal = expectation(rho_ideal, obs);
      out.unmitigated = expectation(rho_noisy, obs);
    } else {
      out.ideal = sample_shots(rho_ideal, obs, cfg.shots, cfg.seed ^ 0xabcdef12ULL).value;
      out.unmitigated = sample_shots(rho_noisy, obs, cfg.shots, cfg.seed ^ 0x12fedcbaULL).value;
    }
  }

  FitConfig fit_cfg;
  fit_cfg.seed = cfg.seed;

  PartitionOptions opts;
  opts.grain = cfg.grain;
  opts.schedule = cfg.schedule;
  PartitionPlan plan = partition(circuit, nc.layer_noise, opts);
  PlanRecovery learned = learn_plan_recoveries(plan, fit_cfg);
  if (!learned.all_converged) {
    throw convergence_error("block learner failed to converge; see per-block fit reports");
  }
  out.block_reports = learned.reports;
  out.mosaic = execute_and_estimate(nc, obs, learned.recoveries, cfg.n_samples, cfg);

  if (cfg.run_layerwise) {
    PartitionOptions lw_opts;
    lw_opts.grain = 1;
    lw_opts.scope_limit = opts.scope_limit;
    PartitionPlan lw_plan = partition(circuit, nc.layer_noise, lw_opts);
    PlanRecovery lw = learn_plan_recoveries(lw_plan, fit_cfg);
    out.layerwise_reports = lw.reports;
    out.layerwise = execute_and_estimate(nc, obs, lw.recoveries, cfg.n_samples, cfg);
  }
  return out;
}

namespace {

ordered_json mitigation_to_json(const MitigationResult& m, bool with_records) {
  ordered_json j;
  j["estimate"] = m.estimate;
  j["std_error"] = m.std_error;
  j["gamma_total"] = m.gamma_total;
  j["n_samples"] = m.n_samples;
  j["unique_circuits"] = m.unique_circuits;
  if (with_records) {
    ordered_json recs = ordered_json::array();
    for (const auto& r : m.records) {
      char key[32];
      std::snprintf(key, sizeof(key), "%016llx", static_cast<unsigned long long>(r.canonical_key));
      recs.push_back({{"key", key}, {"m", r.multiplicity}, {"s", r.sign}, {"r", r.value}});
    }
    j["records"] = std::move(recs);
  }
  return j;
}

ordered_json reports_to_json(const std::vector<BlockReport>& reports) {
  ordered_json arr = ordered_json::array();
  for (const auto& r : reports) {
    ordered_json j;
    j["id"] = r.id;
    j["layer_range"] = {r.layer_begin, r.layer_end};
    j["gamma"] = r.gamma;
    j["fit_loss"] = r.fit_loss;
    j["fit_residual"] = r.fit_residual;
    j["iterations"] = r.iterations;
    j["converged"] = r.converged;
    j["scopes"] = r.scopes;
    arr.push_back(std::move(j));
  }
  return arr;
}

}  // namespace

std::string pipeline_result_to_json(const PipelineResult& r, const RunConfig& cfg) {
  ordered_json j;
  j["n"] = r.n;
  j["observable"] = cfg.observable;
  j["ideal"] = r.ideal;
  j["unmitigated"] = r.unmitigated;
  j["mosaic"] = mitigation_to_json(r.mosaic, true);
  j["mosaic"]["error_removed"] = r.error_removed(r.mosaic.estimate);
  if (r.layerwise) {
    j["layerwise_pec"] = mitigation_to_json(*r.layerwise, false);
    j["layerwise_pec"]["error_removed"] = r.error_removed(r.layerwise->estimate);
  }
  j["unmitigated_error_removed"] = 0.0;
  j["per_block"] = reports_to_json(r.block_reports);
  return j.dump(2) + "\n";
}

std::string partition_plan_to_text(const PartitionPlan& plan) {
  ordered_json arr = ordered_json::array();
  for (const auto& b : plan.blocks) {
    ordered_json j;
    j["id"] = b.id;
    j["layer_range"] = {b.layer_begin, b.layer_end};
    j["footprint"] = b.footprint;
    ordered_json scopes = ordered_json::array();
    for (const auto& s : b.scopes) scopes.push_back(s.qubits);
    j["scopes"] = std::move(scopes);
    int gates = 0;
    for (const auto& layer : b.layers) gates += static_cast<int>(layer.gates.size());
    j["gate_count"] = gates;
    arr.push_back(std::move(j));
  }
  return arr.dump(2) + "\n";
}

}  // namespace mosaic
