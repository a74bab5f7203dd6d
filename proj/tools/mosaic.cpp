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

#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "mosaic/analytics.hpp"
#include "mosaic/errors.hpp"
#include "mosaic/io.hpp"
#include "mosaic/pipeline.hpp"

namespace {

using mosaic::RunConfig;
using ordered_json = nlohmann::ordered_json;

void emit(const std::string& out_path, const std::string& content) {
  if (out_path.empty()) {
    std::cout << content;
  } else {
    mosaic::write_file(out_path, content);
  }
}

// Config file carries the RunConfig field names; flags of the same name win.
void load_config_file(RunConfig& cfg, const std::string& path) {
  ordered_json j;
  try {
    j = ordered_json::parse(mosaic::read_file(path));
  } catch (const mosaic::Error&) {
    throw;
  } catch (const std::exception& e) {
    throw mosaic::config_error(std::string("config parse failure: ") + e.what());
  }
  if (j.contains("circuit")) cfg.circuit = j["circuit"].get<std::string>();
  if (j.contains("observable")) cfg.observable = j["observable"].get<std::string>();
  if (j.contains("noise")) {
    const auto& nj = j["noise"];
    if (nj.contains("p2")) cfg.p2 = nj["p2"].get<double>();
    if (nj.contains("p1")) {
      cfg.p1 = nj["p1"].get<double>();
      cfg.p1_explicit = true;
    }
    if (nj.contains("seed")) cfg.noise_seed = nj["seed"].get<std::uint64_t>();
  }
  if (j.contains("noise_file")) cfg.noise_file = j["noise_file"].get<std::string>();
  if (j.contains("grain")) cfg.grain = j["grain"].get<int>();
  if (j.contains("schedule")) cfg.schedule = j["schedule"].get<std::vector<int>>();
  if (j.contains("samples")) cfg.n_samples = j["samples"].get<std::int64_t>();
  if (j.contains("shots")) cfg.shots = j["shots"].get<int>();
  if (j.contains("seed")) cfg.seed = j["seed"].get<std::uint64_t>();
  if (j.contains("backend")) {
    std::string b = j["backend"].get<std::string>();
    if (b == "dense") {
      cfg.backend = mosaic::Backend::Dense;
    } else if (b == "trajectory") {
      cfg.backend = mosaic::Backend::Trajectory;
    } else {
      throw mosaic::config_error("config backend must be dense or trajectory");
    }
  }
  if (j.contains("exact")) cfg.exact_expectation = j["exact"].get<bool>();
  if (j.contains("noisy_corrections")) cfg.noisy_corrections = j["noisy_corrections"].get<bool>();
  if (j.contains("threads")) cfg.threads = j["threads"].get<int>();
  if (j.contains("out")) cfg.out_path = j["out"].get<std::string>();
}

int run_cli(int argc, char** argv) {
  CLI::App app{"blockwise probabilistic error cancellation on a noisy-circuit simulator"};
  app.require_subcommand(1);

  RunConfig cfg;
  std::string config_path;
  // load the config before CLI11 binds flag values, so flags override it
  for (int i = 1; i + 1 < argc; ++i) {
    if (std::string(argv[i]) == "--config") load_config_file(cfg, argv[i + 1]);
  }
  std::string backend = cfg.backend == mosaic::Backend::Trajectory ? "trajectory" : "dense";

  app.add_option("--config", config_path, "JSON config file (flags override)");
  app.add_option("--seed", cfg.seed, "master seed");
  app.add_option("--out", cfg.out_path, "output path (default stdout)");
  app.add_option("--grain", cfg.grain, "block grain w");
  app.add_option("--samples", cfg.n_samples, "Monte Carlo sample count N");
  app.add_option("--shots", cfg.shots, "shots per executed circuit S");
  app.add_option("--backend", backend, "dense | trajectory");
  app.add_flag("--exact", cfg.exact_expectation, "exact expectations instead of shots (dense)");
  app.add_flag("--noisy-corrections", cfg.noisy_corrections, "apply 1q noise to inserted corrections");
  app.add_option("--threads", cfg.threads, "worker threads for circuit execution");
  app.add_flag("!--no-layerwise", cfg.run_layerwise, "skip the w=1 baseline run");

  // mitigate
  auto* mitigate = app.add_subcommand("mitigate", "full pipeline with ideal/noisy/layerwise references");
  mitigate->add_option("--circuit", cfg.circuit, "file path or tfim:<n>:<d> / random:<n>:<d>:<seed>");
  mitigate->add_option("--observable", cfg.observable, "rho00 | tfim[:J[:h]] | pauli sum");
  double p1_flag = -1.0;
  mitigate->add_option("--p1", p1_flag, "single-qubit error strength (default p2/10)");
  mitigate->add_option("--p2", cfg.p2, "two-qubit error strength");
  mitigate->add_option("--noise-seed", cfg.noise_seed, "noise synthesis seed");
  mitigate->add_option("--noise-file", cfg.noise_file, "load layer noise models from JSON");
  mitigate->add_option("--schedule", cfg.schedule, "heterogeneous grain schedule");

  // partition
  auto* part = app.add_subcommand("partition", "emit the block plan for a circuit");
  part->add_option("--circuit", cfg.circuit, "circuit source");
  part->add_option("--p2", cfg.p2, "two-qubit error strength");
  part->add_option("--p1", p1_flag, "single-qubit error strength");
  part->add_option("--schedule", cfg.schedule, "heterogeneous grain schedule");

  // scan
  auto* scan = app.add_subcommand("scan", "overhead scaling scan, CSV output");
  std::string axis = "noise";
  std::string family = "depolarizing";
  std::vector<double> axis_values;
  int scan_n = 4, scan_depth = 8;
  double scan_noise = 0.02;
  scan->add_option("--axis", axis, "size | depth | noise");
  scan->add_option("--values", axis_values, "axis values (sorted)")->expected(-1);
  scan->add_option("--n", scan_n, "fixed system size");
  scan->add_option("--depth", scan_depth, "fixed depth");
  scan->add_option("--noise", scan_noise, "fixed noise strength");
  scan->add_option("--family", family, "depolarizing | correlated");

  // verify
  auto* verify = app.add_subcommand("verify", "lemma and property suite");
  int trials = 1000;
  verify->add_option("--trials", trials, "randomized trials");

  // bench-tfim
  auto* bench_tfim = app.add_subcommand("bench-tfim", "TFIM VQE benchmark at one size");
  int bt_n = 4, bt_depth = 2, bt_budget = 1200;
  bench_tfim->add_option("--n", bt_n, "qubits");
  bench_tfim->add_option("--depth", bt_depth, "ansatz repetitions");
  bench_tfim->add_option("--p2", cfg.p2, "two-qubit error strength");
  bench_tfim->add_option("--p1", p1_flag, "single-qubit error strength");
  bench_tfim->add_option("--budget", bt_budget, "optimizer iterations");
  bench_tfim->add_option("--schedule", cfg.schedule, "heterogeneous grain schedule");

  // bench-random
  auto* bench_rand = app.add_subcommand("bench-random", "random-circuit rho00 benchmark");
  int br_n = 6, br_depth = 8;
  std::uint64_t br_circuit_seed = 7;
  bench_rand->add_option("--n", br_n, "qubits");
  bench_rand->add_option("--depth", br_depth, "depth steps");
  bench_rand->add_option("--circuit-seed", br_circuit_seed, "random circuit seed");
  bench_rand->add_option("--p2", cfg.p2, "two-qubit error strength");
  bench_rand->add_option("--p1", p1_flag, "single-qubit error strength");

  CLI11_PARSE(app, argc, argv);

  if (backend == "dense") {
    cfg.backend = mosaic::Backend::Dense;
  } else if (backend == "trajectory") {
    cfg.backend = mosaic::Backend::Trajectory;
  } else {
    throw mosaic::config_error("--backend must be dense or trajectory");
  }
  if (p1_flag >= 0.0) {
    cfg.p1 = p1_flag;
    cfg.p1_explicit = true;
  }
  if (cfg.n_samples < 1 || cfg.shots < 1) throw mosaic::config_error("N and S must be >= 1");

  if (*mitigate) {
    auto result = run_mitigation(cfg);
    emit(cfg.out_path, pipeline_result_to_json(result, cfg));
    return 0;
  }

  if (*part) {
    mosaic::CircuitIR c = resolve_circuit(cfg);
    double p1 = cfg.p1_explicit ? cfg.p1 : mosaic::default_p1(cfg.p2);
    mosaic::PartitionOptions opts;
    opts.grain = cfg.grain;
    opts.schedule = cfg.schedule;
    auto plan = partition_with_synth_noise(c, p1, cfg.p2, cfg.noise_seed, opts);
    emit(cfg.out_path, partition_plan_to_text(plan));
    return 0;
  }

  if (*scan) {
    mosaic::ScanSpec spec;
    if (axis == "size") {
      spec.axis = mosaic::ScanAxis::SystemSize;
    } else if (axis == "depth") {
      spec.axis = mosaic::ScanAxis::Depth;
    } else if (axis == "noise") {
      spec.axis = mosaic::ScanAxis::NoiseStrength;
    } else {
      throw mosaic::config_error("--axis must be size, depth or noise");
    }
    if (family == "depolarizing") {
      spec.family = mosaic::ScanFamily::Depolarizing;
    } else if (family == "correlated") {
      spec.family = mosaic::ScanFamily::Correlated;
    } else {
      throw mosaic::config_error("--family must be depolarizing or correlated");
    }
    if (axis_values.empty()) {
      if (spec.axis == mosaic::ScanAxis::NoiseStrength) {
        axis_values = {0.005, 0.01, 0.02, 0.04, 0.08};
      } else if (spec.axis == mosaic::ScanAxis::Depth) {
        axis_values = {2, 4, 8, 16, 32};
      } else {
        axis_values = {1, 2, 4, 8, 16};
      }
    }
    spec.values = axis_values;
    spec.system_size = scan_n;
    spec.depth = scan_depth;
    spec.noise = scan_noise;
    spec.grain = cfg.grain;
    spec.seed = cfg.seed;
    emit(cfg.out_path, scan_to_csv(overhead_scan(spec)));
    return 0;
  }

  if (*verify) {
    auto report = mosaic::lemma_suite(cfg.seed, trials);
    ordered_json j;
    j["trials"] = report.trials;
    j["submultiplicativity_violations"] = report.submultiplicativity_violations;
    j["unitary_invariance_violations"] = report.unitary_invariance_violations;
    j["strictness_checks"] = report.strictness_checks;
    j["strictness_failures"] = report.strictness_failures;
    j["violations"] = report.violations;
    emit(cfg.out_path, j.dump(2) + "\n");
    return report.ok() ? 0 : 1;
  }

  if (*bench_tfim) {
    cfg.circuit = "tfim:" + std::to_string(bt_n) + ":" + std::to_string(bt_depth);
    cfg.observable = "tfim";
    cfg.exact_expectation = cfg.exact_expectation || cfg.backend == mosaic::Backend::Dense;
    auto result = run_mitigation(cfg);
    auto ref = mosaic::tfim_reference(bt_n, 1.0, 1.0);
    ordered_json j = ordered_json::parse(pipeline_result_to_json(result, cfg));
    j["exact_ground_energy"] = ref.ground_energy;
    j["exact_energy_per_site"] = ref.energy_per_site;
    j["mosaic_energy_per_site"] = result.mosaic.estimate / bt_n;
    emit(cfg.out_path, j.dump(2) + "\n");
    return 0;
  }

  if (*bench_rand) {
    cfg.circuit = "random:" + std::to_string(br_n) + ":" + std::to_string(br_depth) + ":" +
                  std::to_string(br_circuit_seed);
    cfg.observable = "rho00";
    auto result = run_mitigation(cfg);
    emit(cfg.out_path, pipeline_result_to_json(result, cfg));
    return 0;
  }

  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run_cli(argc, argv);
  } catch (const mosaic::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.exit_code();
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
